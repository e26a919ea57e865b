// oracles.cpp -- reference implementations.

#include "support/oracles.hpp"

#include <cmath>
#include <numbers>

#include "stationary.hpp"

namespace qcr::oracle {

std::vector<CMat> naive_dft(const std::vector<CMat>& x, bool inverse) {
    const int n = static_cast<int>(x.size());
    const int m = x.front().rows();
    std::vector<CMat> out(n, CMat(m, m));
    const double base = (inverse ? +2.0 : -2.0) * std::numbers::pi / n;
    for (int k = 0; k < n; ++k) {
        CMat acc(m, m);
        for (int j = 0; j < n; ++j) {
            const double ang = base * j * k;
            const cplx w(std::cos(ang), std::sin(ang));
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c) acc(r, c) += w * x[j](r, c);
        }
        if (inverse)
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c) acc(r, c) /= static_cast<double>(n);
        out[k] = std::move(acc);
    }
    return out;
}

MatrixSeries naive_series_mul(const MatrixSeries& a, const MatrixSeries& b) {
    MatrixSeries c;
    c.start = a.start + b.start;
    const int len = a.size() + b.size() - 1;
    c.coeffs.assign(len, Mat(a.order(), a.order()));
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j) c.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return c;
}

std::vector<Mat> dense_lt_inverse_head(const std::vector<Mat>& c, int q) {
    const int m = c.front().rows();
    const int n = q * m;
    Mat big(n, n);
    for (int bi = 0; bi < q; ++bi)
        for (int bj = 0; bj <= bi; ++bj) {
            const int idx = bi - bj;
            if (idx >= static_cast<int>(c.size())) continue;
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) big(bi * m + r, bj * m + s) = c[idx](r, s);
        }
    const Mat inv = inverse(big);
    std::vector<Mat> head(q, Mat(m, m));
    for (int bi = 0; bi < q; ++bi)
        for (int r = 0; r < m; ++r)
            for (int s = 0; s < m; ++s) head[bi](r, s) = inv(bi * m + r, s);
    return head;
}

std::pair<MatrixSeries, MatrixSeries> dense_cr_sweep(const MatrixSeries& a,
                                                     const MatrixSeries& ahat, int levels,
                                                     int band) {
    const int m = a.order();
    const int n = levels * m;
    // H = I - P on the truncated chain: row 0 carries the censored
    // blocks, rows i >= 1 the Toeplitz band.
    Mat h(n, n);
    for (int i = 0; i < levels; ++i)
        for (int j = 0; j < levels; ++j) {
            Mat blk = i == 0 ? ahat.get(j) : a.get(j - i);
            blk *= -1.0;
            if (i == j) blk += Mat::identity(m);
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) h(i * m + r, j * m + s) = blk(r, s);
        }
    // Permutation: odd levels first, then even levels.
    std::vector<int> order;
    for (int i = 1; i < levels; i += 2) order.push_back(i);
    const int n_odd = static_cast<int>(order.size());
    for (int i = 0; i < levels; i += 2) order.push_back(i);
    Mat perm(n, n);
    for (int bi = 0; bi < levels; ++bi)
        for (int r = 0; r < m; ++r) perm(bi * m + r, order[bi] * m + r) = 1.0;
    const Mat hp = perm * h * transpose(perm);
    // Partition and form the Schur complement onto the even part.
    const int cut = n_odd * m;
    Mat u11(cut, cut), u12(cut, n - cut), u21(n - cut, cut), u22(n - cut, n - cut);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
            const double v = hp(r, s);
            if (r < cut && s < cut) u11(r, s) = v;
            else if (r < cut) u12(r, s - cut) = v;
            else if (s < cut) u21(r - cut, s) = v;
            else u22(r - cut, s - cut) = v;
        }
    const Mat schur = u22 - u21 * solve(u11, u12);
    // Read the reduced series off the first two block rows.
    auto block_at = [&](int bi, int bj) {
        Mat out(m, m);
        for (int r = 0; r < m; ++r)
            for (int s = 0; s < m; ++s) out(r, s) = schur(bi * m + r, bj * m + s);
        return out;
    };
    MatrixSeries ahat_next{0, {}};
    for (int j = 0; j < band; ++j) {
        Mat blk = block_at(0, j);
        blk *= -1.0;
        if (j == 0) blk += Mat::identity(m);
        ahat_next.coeffs.push_back(std::move(blk));
    }
    MatrixSeries a_next{-1, {}};
    for (int j = 0; j <= band; ++j) {
        Mat blk = block_at(1, j);
        blk *= -1.0;
        if (j == 1) blk += Mat::identity(m);
        a_next.coeffs.push_back(std::move(blk));
    }
    return {std::move(a_next), std::move(ahat_next)};
}

std::vector<std::vector<double>> dense_truncated_stationary(const MG1Model& model, int levels) {
    const int m = model.m;
    const int n = levels * m;
    Mat p(n, n);
    for (int i = 0; i < levels; ++i)
        for (int j = 0; j < levels; ++j) {
            const Mat blk = i == 0 ? model.b.get(j) : model.a.get(j - i);
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) p(i * m + r, j * m + s) = blk(r, s);
        }
    // Push the truncated mass onto the last level so rows sum to one.
    for (int r = 0; r < n; ++r) {
        double rs = 0.0;
        for (int s = 0; s < n; ++s) rs += p(r, s);
        p(r, (levels - 1) * m + r % m) += 1.0 - rs;
    }
    // GTH elimination: censor the states from the top down.  Each step
    // only adds nonnegative numbers and performs one division, so the
    // result stays componentwise accurate however long the chain is.
    for (int k = n - 1; k >= 1; --k) {
        double s = 0.0;
        for (int j = 0; j < k; ++j) s += p(k, j);
        for (int i = 0; i < k; ++i) p(i, k) /= s;
        for (int i = 0; i < k; ++i) {
            const double f = p(i, k);
            if (f == 0.0) continue;
            for (int j = 0; j < k; ++j) p(i, j) += f * p(k, j);
        }
    }
    std::vector<double> x(n, 0.0);
    x[0] = 1.0;
    for (int k = 1; k < n; ++k) {
        double acc = 0.0;
        for (int i = 0; i < k; ++i) acc += x[i] * p(i, k);
        x[k] = acc;
    }
    double total = 0.0;
    for (double v : x) total += v;
    for (double& v : x) v /= total;
    std::vector<std::vector<double>> pi(levels, std::vector<double>(m));
    for (int i = 0; i < levels; ++i)
        for (int r = 0; r < m; ++r) pi[i][r] = x[i * m + r];
    return pi;
}

std::vector<cplx> circulant_apply(const std::vector<Mat>& row, const std::vector<cplx>& x, int m) {
    const int n = static_cast<int>(row.size());
    std::vector<cplx> y(static_cast<size_t>(n) * m, cplx(0.0));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            const Mat& blk = row[((l - i) % n + n) % n];
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c)
                    y[static_cast<size_t>(i) * m + r] += blk(r, c) * x[static_cast<size_t>(l) * m + c];
        }
    return y;
}

MG1Model random_ergodic_model(std::mt19937_64& rng, int m, int a_blocks, int b_blocks) {
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    for (int attempt = 0; attempt < 200; ++attempt) {
        // Draw positive entries, bias the down block, normalize each row
        // of the concatenated A blocks to an exact unit sum.
        std::vector<Mat> a(a_blocks, Mat(m, m));
        for (int r = 0; r < m; ++r) {
            std::vector<double> row(static_cast<size_t>(a_blocks) * m);
            double total = 0.0;
            for (int i = 0; i < a_blocks; ++i)
                for (int c = 0; c < m; ++c) {
                    double v = unif(rng);
                    if (i == 0) v *= 3.0 * a_blocks;  // weight A_-1: negative drift
                    row[static_cast<size_t>(i) * m + c] = v;
                    total += v;
                }
            for (int i = 0; i < a_blocks; ++i) {
                double rs = 0.0;
                for (int c = 0; c < m; ++c) {
                    a[i](r, c) = row[static_cast<size_t>(i) * m + c] / total;
                    rs += a[i](r, c);
                }
                (void)rs;
            }
            // Force the row sum across blocks to exactly 1.
            double acc = 0.0;
            for (int i = 0; i < a_blocks; ++i)
                for (int c = 0; c < m; ++c) acc += a[i](r, c);
            a[a_blocks - 1](r, m - 1) += 1.0 - acc;
        }
        std::vector<Mat> b(b_blocks, Mat(m, m));
        for (int r = 0; r < m; ++r) {
            double total = 0.0;
            std::vector<double> row(static_cast<size_t>(b_blocks) * m);
            for (int i = 0; i < b_blocks; ++i)
                for (int c = 0; c < m; ++c) {
                    row[static_cast<size_t>(i) * m + c] = unif(rng);
                    total += row[static_cast<size_t>(i) * m + c];
                }
            for (int i = 0; i < b_blocks; ++i)
                for (int c = 0; c < m; ++c) b[i](r, c) = row[static_cast<size_t>(i) * m + c] / total;
            double acc = 0.0;
            for (int i = 0; i < b_blocks; ++i)
                for (int c = 0; c < m; ++c) acc += b[i](r, c);
            b[b_blocks - 1](r, m - 1) += 1.0 - acc;
        }
        MG1Model model = make_mg1(std::move(a), std::move(b));
        const DriftReport dr = drift(model);
        if (dr.varrho <= -0.02) return model;
    }
    fail(Errc::internal_error, "random_ergodic_model: no ergodic draw in 200 attempts");
}

}  // namespace qcr::oracle
