// dense.cpp -- implementation of the dense kernels.

#include "dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qcr {

const char* errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::parse_error: return "parse-error";
        case Errc::validation_error: return "validation-error";
        case Errc::invalid_argument: return "invalid-argument";
        case Errc::singular_matrix: return "singular-matrix";
        case Errc::no_convergence: return "no-convergence";
        case Errc::numerical_breakdown: return "numerical-breakdown";
        case Errc::precondition_violation: return "precondition-violation";
        case Errc::degenerate_boundary: return "degenerate-boundary";
        case Errc::singular_symbol: return "singular-symbol";
        case Errc::io_error: return "io-error";
        case Errc::internal_error: return "internal-error";
    }
    return "internal-error";
}

static void require_same_shape(const Mat& a, const Mat& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(Errc::invalid_argument, std::string(op) + ": shape mismatch " +
                                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                         " vs " + std::to_string(b.rows()) + "x" +
                                         std::to_string(b.cols()));
}

Mat Mat::identity(int n) {
    Mat e(n, n);
    for (int i = 0; i < n; ++i) e(i, i) = 1.0;
    return e;
}

Mat& Mat::operator+=(const Mat& o) {
    require_same_shape(*this, o, "Mat+=");
    for (size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    require_same_shape(*this, o, "Mat-=");
    for (size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
}

Mat& Mat::operator*=(double s) {
    for (double& x : v_) x *= s;
    return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(double s, Mat a) { return a *= s; }

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows())
        fail(Errc::invalid_argument, "Mat*: inner dimension mismatch");
    Mat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Mat transpose(const Mat& a) {
    Mat t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

Mat abs_elems(const Mat& a) {
    Mat r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = std::fabs(a(i, j));
    return r;
}

bool all_finite(const Mat& a) {
    for (double x : a.data())
        if (!std::isfinite(x)) return false;
    return true;
}

double max_abs(const Mat& a) {
    double m = 0.0;
    for (double x : a.data()) m = std::max(m, std::fabs(x));
    return m;
}

double inf_norm(const Mat& a) {
    double best = 0.0;
    for (int i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.cols(); ++j) s += std::fabs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

std::vector<double> rowvec_mul(const std::vector<double>& x, const Mat& a) {
    if (static_cast<int>(x.size()) != a.rows())
        fail(Errc::invalid_argument, "rowvec_mul: length mismatch");
    std::vector<double> y(a.cols(), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        for (int j = 0; j < a.cols(); ++j) y[j] += xi * a(i, j);
    }
    return y;
}

std::vector<double> matvec(const Mat& a, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != a.cols())
        fail(Errc::invalid_argument, "matvec: length mismatch");
    std::vector<double> y(a.rows(), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

// ---------------------------------------------------------------------------
// Real LU
// ---------------------------------------------------------------------------

Lu lu_factor(Mat a, double rel_tol) {
    if (a.rows() != a.cols()) fail(Errc::invalid_argument, "lu_factor: matrix not square");
    const int n = a.rows();
    const double scale = std::max(max_abs(a), 1e-300);
    std::vector<int> piv(n);
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(a(i, k)) > std::fabs(a(p, k))) p = i;
        if (std::fabs(a(p, k)) <= rel_tol * scale)
            fail(Errc::singular_matrix,
                 "pivot " + std::to_string(k) + " below tolerance (matrix numerically singular)");
        piv[k] = p;
        if (p != k)
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        const double inv_piv = 1.0 / a(k, k);
        for (int i = k + 1; i < n; ++i) {
            a(i, k) *= inv_piv;
            const double lik = a(i, k);
            if (lik == 0.0) continue;
            for (int j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
        }
    }
    return Lu{std::move(a), std::move(piv)};
}

Mat lu_solve(const Lu& f, const Mat& b) {
    const int n = f.lu.rows();
    if (b.rows() != n) fail(Errc::invalid_argument, "lu_solve: rhs row mismatch");
    Mat x = b;
    // Apply the row permutation, then forward/back substitution per column.
    for (int k = 0; k < n; ++k)
        if (f.piv[k] != k)
            for (int j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(f.piv[k], j));
    for (int k = 0; k < n; ++k)
        for (int i = k + 1; i < n; ++i) {
            const double lik = f.lu(i, k);
            if (lik == 0.0) continue;
            for (int j = 0; j < x.cols(); ++j) x(i, j) -= lik * x(k, j);
        }
    for (int k = n - 1; k >= 0; --k) {
        const double inv = 1.0 / f.lu(k, k);
        for (int j = 0; j < x.cols(); ++j) x(k, j) *= inv;
        for (int i = 0; i < k; ++i) {
            const double uik = f.lu(i, k);
            if (uik == 0.0) continue;
            for (int j = 0; j < x.cols(); ++j) x(i, j) -= uik * x(k, j);
        }
    }
    return x;
}

Mat solve(const Mat& a, const Mat& b) { return lu_solve(lu_factor(a), b); }

Mat inverse(const Mat& a) { return solve(a, Mat::identity(a.rows())); }

int rank_estimate(Mat a, double rel_tol, double scale) {
    const int rows = a.rows(), cols = a.cols();
    int rank = 0;
    double threshold = -1.0;
    std::vector<bool> used_row(rows, false), used_col(cols, false);
    for (int step = 0; step < std::min(rows, cols); ++step) {
        // Complete pivoting: largest remaining entry.
        int pr = -1, pc = -1;
        double best = 0.0;
        for (int i = 0; i < rows; ++i) {
            if (used_row[i]) continue;
            for (int j = 0; j < cols; ++j) {
                if (used_col[j]) continue;
                if (std::fabs(a(i, j)) > best) {
                    best = std::fabs(a(i, j));
                    pr = i;
                    pc = j;
                }
            }
        }
        if (threshold < 0.0) threshold = rel_tol * std::max({best, scale, 1e-300});
        if (pr < 0 || best <= threshold) break;
        ++rank;
        used_row[pr] = true;
        used_col[pc] = true;
        const double inv_piv = 1.0 / a(pr, pc);
        for (int i = 0; i < rows; ++i) {
            if (used_row[i] || a(i, pc) == 0.0) continue;
            const double f = a(i, pc) * inv_piv;
            for (int j = 0; j < cols; ++j)
                if (!used_col[j]) a(i, j) -= f * a(pr, j);
        }
    }
    return rank;
}

std::vector<double> left_fixed_vector(const Mat& p) {
    if (p.rows() != p.cols()) fail(Errc::invalid_argument, "left_fixed_vector: not square");
    const int n = p.rows();
    // (P^T - I) x = 0 with one equation replaced by sum(x) = 1.  Try the
    // last row first; fall back to earlier rows if the bordered system is
    // singular (can happen when the dropped equation was independent).
    Mat base = transpose(p);
    for (int i = 0; i < n; ++i) base(i, i) -= 1.0;
    for (int replace = n - 1; replace >= 0; --replace) {
        Mat sys = base;
        for (int j = 0; j < n; ++j) sys(replace, j) = 1.0;
        Mat rhs(n, 1);
        rhs(replace, 0) = 1.0;
        try {
            Mat x = lu_solve(lu_factor(sys), rhs);
            std::vector<double> out(n);
            for (int i = 0; i < n; ++i) out[i] = x(i, 0);
            return out;
        } catch (const SolverError&) {
            if (replace == 0) throw;
        }
    }
    fail(Errc::internal_error, "left_fixed_vector: unreachable");
}

// ---------------------------------------------------------------------------
// Complex matrices
// ---------------------------------------------------------------------------

CMat::CMat(const Mat& re) : CMat(re.rows(), re.cols()) {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) (*this)(i, j) = re(i, j);
}

CMat CMat::identity(int n) {
    CMat e(n, n);
    for (int i = 0; i < n; ++i) e(i, i) = 1.0;
    return e;
}

CMat& CMat::operator+=(const CMat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(Errc::invalid_argument, "CMat+=: shape mismatch");
    for (size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
}

CMat operator+(CMat a, const CMat& b) { return a += b; }

CMat operator*(cplx s, CMat a) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) a(i, j) *= s;
    return a;
}

CMat operator*(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows()) fail(Errc::invalid_argument, "CMat*: inner dimension mismatch");
    CMat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

CLu clu_factor(CMat a, double rel_tol) {
    if (a.rows() != a.cols()) fail(Errc::invalid_argument, "clu_factor: matrix not square");
    const int n = a.rows();
    double scale = 1e-300;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    std::vector<int> piv(n);
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
        if (std::abs(a(p, k)) <= rel_tol * scale)
            fail(Errc::singular_matrix, "complex pivot below tolerance");
        piv[k] = p;
        if (p != k)
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        const cplx inv_piv = 1.0 / a(k, k);
        for (int i = k + 1; i < n; ++i) {
            a(i, k) *= inv_piv;
            const cplx lik = a(i, k);
            if (lik == cplx(0.0)) continue;
            for (int j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
        }
    }
    return CLu{std::move(a), std::move(piv)};
}

std::vector<cplx> clu_solve(const CLu& f, const std::vector<cplx>& b) {
    const int n = f.lu.rows();
    if (static_cast<int>(b.size()) != n) fail(Errc::invalid_argument, "clu_solve: rhs length mismatch");
    std::vector<cplx> x = b;
    for (int k = 0; k < n; ++k)
        if (f.piv[k] != k) std::swap(x[k], x[f.piv[k]]);
    for (int k = 0; k < n; ++k)
        for (int i = k + 1; i < n; ++i) x[i] -= f.lu(i, k) * x[k];
    for (int k = n - 1; k >= 0; --k) {
        x[k] /= f.lu(k, k);
        for (int i = 0; i < k; ++i) x[i] -= f.lu(i, k) * x[k];
    }
    return x;
}

std::vector<cplx> clu_solve_adjoint(const CLu& f, const std::vector<cplx>& b) {
    // P A = L U  =>  A^H = U^H L^H P.  Solve U^H w = b (lower triangular),
    // L^H t = w (upper triangular, unit diagonal), then undo the permutation.
    const int n = f.lu.rows();
    if (static_cast<int>(b.size()) != n)
        fail(Errc::invalid_argument, "clu_solve_adjoint: rhs length mismatch");
    std::vector<cplx> w = b;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < k; ++i) w[k] -= std::conj(f.lu(i, k)) * w[i];
        w[k] /= std::conj(f.lu(k, k));
    }
    for (int k = n - 1; k >= 0; --k)
        for (int i = k + 1; i < n; ++i) w[k] -= std::conj(f.lu(i, k)) * w[i];
    for (int k = n - 1; k >= 0; --k)
        if (f.piv[k] != k) std::swap(w[k], w[f.piv[k]]);
    return w;
}

static double vec_norm(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

double sigma_max_estimate(const CMat& a) {
    const int n = a.rows();
    if (n == 0) return 0.0;
    std::vector<cplx> x(n, cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
    double lambda = 0.0;
    for (int it = 0; it < 200; ++it) {
        // y = A^H (A x) with |x| = 1, so |y| converges to sigma_max^2.
        std::vector<cplx> ax(n, cplx(0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ax[i] += a(i, j) * x[j];
        std::vector<cplx> y(n, cplx(0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) y[j] += std::conj(a(i, j)) * ax[i];
        const double ny = vec_norm(y);
        if (ny == 0.0) return 0.0;
        const double prev = lambda;
        lambda = ny;
        for (int i = 0; i < n; ++i) x[i] = y[i] / ny;
        if (it > 2 && std::fabs(lambda - prev) <= 1e-13 * std::max(lambda, 1.0)) break;
    }
    return std::sqrt(lambda);
}

double sigma_min_estimate(const CMat& a) {
    const int n = a.rows();
    if (n == 0) return 0.0;
    CLu f;
    try {
        f = clu_factor(a);
    } catch (const SolverError&) {
        return 0.0;  // could not factor: treat as numerically singular
    }
    // Power iteration on (A A^H)^{-1}: each step solves A^H z = x, A y = z.
    std::vector<cplx> x(n, cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
    double lambda = 0.0;
    for (int it = 0; it < 200; ++it) {
        std::vector<cplx> z = clu_solve_adjoint(f, x);
        std::vector<cplx> y = clu_solve(f, z);
        const double ny = vec_norm(y);
        if (ny == 0.0) return 0.0;
        const double prev = lambda;
        lambda = ny;  // approximates 1 / sigma_min^2
        for (int i = 0; i < n; ++i) x[i] = y[i] / ny;
        if (it > 2 && std::fabs(lambda - prev) <= 1e-13 * std::max(lambda, 1.0)) break;
    }
    return 1.0 / std::sqrt(lambda);
}

}  // namespace qcr
