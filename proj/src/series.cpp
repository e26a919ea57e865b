// series.cpp -- implementation of the power-series kernels.

#include "series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qcr {

Mat MatrixSeries::get(int idx) const {
    const int off = idx - start;
    if (off < 0 || off >= size()) return Mat(order(), order());
    return coeffs[off];
}

Mat MatrixSeries::sum() const {
    if (coeffs.empty()) return Mat();
    Mat s(order(), order());
    for (const Mat& c : coeffs) s += c;
    return s;
}

// ---------------------------------------------------------------------------
// FFT core
// ---------------------------------------------------------------------------

// In-place iterative radix-2 transform; n must be a power of two.
// sign = -1 gives the forward kernel e^{-2 pi i j k / n}, sign = +1 the
// unscaled inverse kernel.
static void fft_pow2(std::vector<cplx>& a, int sign) {
    const int n = static_cast<int>(a.size());
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / len;
        const cplx wl(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            cplx w(1.0);
            for (int k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

static bool is_pow2(long n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<CMat> block_dft(const std::vector<CMat>& x, bool inverse) {
    const int n = static_cast<int>(x.size());
    if (n == 0) return {};
    const int m = x.front().rows();
    for (const CMat& b : x)
        if (b.rows() != m || b.cols() != m)
            fail(Errc::invalid_argument, "block_dft: inconsistent block shapes");
    std::vector<CMat> out(n, CMat(m, m));
    if (is_pow2(n)) {
        std::vector<cplx> lane(n);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) {
                for (int j = 0; j < n; ++j) lane[j] = x[j](r, c);
                fft_pow2(lane, inverse ? +1 : -1);
                for (int j = 0; j < n; ++j)
                    out[j](r, c) = inverse ? lane[j] / static_cast<double>(n) : lane[j];
            }
        return out;
    }
    // Direct evaluation for lengths that are not powers of two.
    const double base = (inverse ? +2.0 : -2.0) * std::numbers::pi / n;
    for (int k = 0; k < n; ++k) {
        CMat acc(m, m);
        for (int j = 0; j < n; ++j) {
            const double ang = base * (static_cast<long>(j) * k % n);
            acc += cplx(std::cos(ang), std::sin(ang)) * x[j];
        }
        out[k] = inverse ? cplx(1.0 / n, 0.0) * acc : acc;
    }
    return out;
}

// Convert a complex block back to real, guarding against transform noise.
static Mat re_realize(const CMat& z, const char* who) {
    double max_im = 0.0, max_re = 0.0;
    for (int i = 0; i < z.rows(); ++i)
        for (int j = 0; j < z.cols(); ++j) {
            max_im = std::max(max_im, std::fabs(z(i, j).imag()));
            max_re = std::max(max_re, std::fabs(z(i, j).real()));
        }
    if (max_im >= 1e-9 * (1.0 + max_re))
        fail(Errc::numerical_breakdown,
             std::string(who) + ": imaginary residue " + std::to_string(max_im) +
                 " exceeds tolerance (transform did not return real data)");
    Mat r(z.rows(), z.cols());
    for (int i = 0; i < z.rows(); ++i)
        for (int j = 0; j < z.cols(); ++j) r(i, j) = z(i, j).real();
    return r;
}

MatrixSeries series_mul(const MatrixSeries& a, const MatrixSeries& b) {
    if (a.coeffs.empty() || b.coeffs.empty())
        return MatrixSeries{a.start + b.start, {}};
    if (a.order() != b.order()) fail(Errc::invalid_argument, "series_mul: block order mismatch");
    const int m = a.order();
    const int out_len = a.size() + b.size() - 1;
    // Smallest power of two strictly greater than deg(a) + deg(b) of the
    // shifted-to-zero series, i.e. >= out_len: products never wrap around.
    int n = 1;
    while (n < out_len) n <<= 1;
    std::vector<CMat> fa(n, CMat(m, m)), fb(n, CMat(m, m));
    for (int i = 0; i < a.size(); ++i) fa[i] = CMat(a.coeffs[i]);
    for (int i = 0; i < b.size(); ++i) fb[i] = CMat(b.coeffs[i]);
    fa = block_dft(fa, false);
    fb = block_dft(fb, false);
    for (int k = 0; k < n; ++k) fa[k] = fa[k] * fb[k];  // a's blocks stay left
    fa = block_dft(fa, true);
    MatrixSeries c;
    c.start = a.start + b.start;
    c.coeffs.reserve(out_len);
    for (int i = 0; i < out_len; ++i) c.coeffs.push_back(re_realize(fa[i], "series_mul"));
    return c;
}

// ---------------------------------------------------------------------------
// Banded lower block triangular Toeplitz inversion (head only)
// ---------------------------------------------------------------------------

static bool head_accepted(const Mat& w, const std::vector<Mat>& y, double eps) {
    Mat s(w.rows(), w.cols());
    for (const Mat& b : y) s += b;
    for (int i = 0; i < w.rows(); ++i)
        for (int j = 0; j < w.cols(); ++j)
            if (!(w(i, j) - s(i, j) <= eps)) return false;
    return true;
}

std::pair<int, std::vector<Mat>> lt_toeplitz_inverse_head(const std::vector<Mat>& c, double eps) {
    if (c.empty()) fail(Errc::invalid_argument, "lt_toeplitz_inverse_head: empty symbol");
    const int m = c.front().rows();
    for (const Mat& b : c)
        if (b.rows() != m || b.cols() != m)
            fail(Errc::invalid_argument, "lt_toeplitz_inverse_head: inconsistent blocks");
    constexpr int kMaxHead = 1 << 14;

    Mat c_sum(m, m);
    for (const Mat& b : c) c_sum += b;
    // W = (sum c_i)^{-1} bounds the row sums of the inverse head; both
    // c_0 and the symbol sum must be invertible.
    Mat y0 = inverse(c.front());
    Mat w_limit = inverse(c_sum);

    MatrixSeries cs{0, c};
    std::vector<Mat> y{y0};
    int q = 1;
    while (!head_accepted(w_limit, y, eps)) {
        if (2 * q > kMaxHead)
            fail(Errc::no_convergence,
                 "lt_toeplitz_inverse_head: head still inaccurate at length " + std::to_string(q));
        // w = coefficients q .. 2q-1 of c(z) y(z).
        MatrixSeries ys{0, y};
        MatrixSeries cy = series_mul(cs, ys);
        MatrixSeries ws;
        ws.start = 0;
        for (int i = 0; i < q; ++i) ws.coeffs.push_back(cy.get(q + i));
        // u = -(coefficients 0 .. q-1 of y(z) w(z)); append to the head.
        MatrixSeries yw = series_mul(ys, ws);
        for (int i = 0; i < q; ++i) {
            Mat u = yw.get(i);
            u *= -1.0;
            y.push_back(std::move(u));
        }
        q *= 2;
    }
    std::vector<Mat> k;
    k.reserve(y.size());
    for (const Mat& b : y) k.push_back(transpose(b));
    return {q, std::move(k)};
}

double max_norm_series(const MatrixSeries& s) {
    if (s.coeffs.empty()) return 0.0;
    Mat acc(s.order(), s.order());
    for (const Mat& c : s.coeffs) acc += abs_elems(c);
    return inf_norm(acc);
}

MatrixSeries truncate_series(MatrixSeries s, double eps) {
    if (s.size() <= 1) return s;
    Mat cum(s.order(), s.order());
    int cut = s.size();
    for (int i = s.size() - 1; i >= 1; --i) {
        cum += abs_elems(s.coeffs[i]);
        bool below = true;
        for (int r = 0; r < cum.rows() && below; ++r)
            for (int c = 0; c < cum.cols(); ++c)
                if (!(cum(r, c) < eps)) {
                    below = false;
                    break;
                }
        if (!below) break;
        cut = i;
    }
    s.coeffs.resize(cut);
    return s;
}

}  // namespace qcr
