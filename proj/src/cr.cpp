// cr.cpp -- cyclic reduction sweeps and solver drivers.

#include "cr.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qcr {

CRIterate cr_begin(const MG1Model& model) {
    CRIterate it;
    it.n = 0;
    it.a = model.a;
    // Ahat^(0)_i = A_i for i >= 0: the boundary-censored chain starts
    // from the repeating part without its down-block.
    it.ahat.start = 0;
    it.ahat.coeffs.assign(model.a.coeffs.begin() + 1, model.a.coeffs.end());
    if (it.ahat.coeffs.empty()) it.ahat.coeffs.push_back(Mat(model.m, model.m));
    it.a_minus1 = model.a.coeffs.front();
    it.check_stochastic = true;
    return it;
}

CRSplit cr_split(const CRIterate& it) {
    CRSplit sp;
    // Even reduction width: both the A band (exponents -1 .. size-2) and
    // the Ahat band (0 .. size-1) must fit under d.
    int d = std::max(it.a.size(), it.ahat.size());
    if (d % 2) ++d;
    if (d < 2) d = 2;
    sp.d = d;
    sp.alpha.start = sp.beta.start = sp.bhat.start = 0;
    for (int i = 0; i < d / 2; ++i) {
        sp.alpha.coeffs.push_back(it.a.get(2 * i));
        sp.beta.coeffs.push_back(it.a.get(2 * i - 1));
        sp.bhat.coeffs.push_back(it.ahat.get(2 * i + 1));
    }
    return sp;
}

// Breakdown guard: reduction preserves nonnegativity and the row sums of
// sum_i A_i^(n); drift beyond this tolerance means the sweep lost the
// Markov structure to round-off.
static constexpr double kStochasticGuard = 1e-6;

static void check_reduced_series(const MatrixSeries& s, const char* tag, bool stochastic_rows) {
    double min_entry = 0.0;
    for (const Mat& c : s.coeffs) {
        if (!all_finite(c)) fail(Errc::numerical_breakdown, std::string(tag) + ": non-finite block");
        for (int i = 0; i < c.rows(); ++i)
            for (int j = 0; j < c.cols(); ++j) min_entry = std::min(min_entry, c(i, j));
    }
    if (min_entry < -kStochasticGuard)
        fail(Errc::numerical_breakdown, std::string(tag) + ": entry " + std::to_string(min_entry) +
                                            " violates nonnegativity");
    if (stochastic_rows) {
        const Mat total = s.sum();
        for (int r = 0; r < total.rows(); ++r) {
            double rs = 0.0;
            for (int c = 0; c < total.cols(); ++c) rs += total(r, c);
            if (rs > 1.0 + kStochasticGuard)
                fail(Errc::numerical_breakdown, std::string(tag) + ": row sum " +
                                                    std::to_string(rs) + " exceeds 1");
        }
    }
}

CRIterate cr_iterate(const CRIterate& it, double eps) {
    if (eps < 0.0 || !std::isfinite(eps)) fail(Errc::invalid_argument, "cr_iterate: bad eps");
    const int m = it.a.order();
    const CRSplit sp = cr_split(it);

    // Inner tolerances for the approximation steps of one sweep.  The sweep
    // discards mass twice: the inverse head is cut at q blocks, and the
    // output series are trimmed below a magnitude threshold.  Whatever
    // falls outside is lost to every later sweep, and the stop metric
    // measures exactly the hat mass still missing, so running these cuts
    // at the stop tolerance itself leaves the metric stuck at a plateau of
    // a few eps.  The two cuts need different safety floors:
    //  - The elementwise head check compares O(1) entries whose rounding
    //    noise is a few hundred ulp once the blocks are mildly ill
    //    conditioned, so a head tolerance much below ~1e-13 can fail
    //    forever on noise alone.  Stop tolerances under ~1e-11 therefore
    //    lose part of their safety margin.  The tail mass this cut leaks
    //    is a small multiple of the tolerance per sweep.
    //  - The series trim is a plain magnitude comparison with no noise
    //    floor, but its leak scales with the band width (every dropped
    //    block can hold almost the threshold), so it runs several orders
    //    tighter to keep wide bands from accumulating a visible row-sum
    //    defect across sweeps.
    const double eps_head = std::max(eps * 0x1p-10, 0x1p-43);
    const double trim = std::max(eps * 0x1p-14, 0x1p-50);

    // Head of the inverse of the upper block triangular Toeplitz matrix
    // I - alpha: transpose the blocks, invert the lower triangular
    // counterpart, transpose back.
    std::vector<Mat> c;
    c.push_back(transpose(Mat::identity(m) - sp.alpha.coeffs[0]));
    for (int i = 1; i < sp.alpha.size(); ++i) {
        Mat t = transpose(sp.alpha.coeffs[i]);
        t *= -1.0;
        c.push_back(std::move(t));
    }
    auto [q, k_blocks] = lt_toeplitz_inverse_head(c, eps_head);
    MatrixSeries k{0, std::move(k_blocks)};

    // V = beta K, Vhat = bhat K, then the Schur updates Y = V beta,
    // Yhat = Vhat beta.
    const MatrixSeries v = series_mul(sp.beta, k);
    const MatrixSeries vhat = series_mul(sp.bhat, k);
    const MatrixSeries y = series_mul(v, sp.beta);
    const MatrixSeries yhat = series_mul(vhat, sp.beta);

    // Keep the full convolution support; the trim pass below is the only
    // place tail blocks are dropped, so every block that still carries more
    // than trim worth of probability mass survives into the next sweep.
    const int dp = std::max(sp.d / 2, q);
    const int len_a = std::max(dp + 1, y.size());
    const int len_ahat = std::max(dp, yhat.size());
    CRIterate next;
    next.n = it.n + 1;
    next.a_minus1 = it.a_minus1;
    next.q = q;
    next.d_prime = dp;
    next.check_stochastic = it.check_stochastic;
    next.a.start = -1;
    for (int i = -1; i + 1 < len_a; ++i) next.a.coeffs.push_back(it.a.get(2 * i) + y.get(i + 1));
    next.ahat.start = 0;
    for (int j = 0; j < len_ahat; ++j) next.ahat.coeffs.push_back(it.ahat.get(2 * j) + yhat.get(j));
    next.a = truncate_series(std::move(next.a), trim);
    next.ahat = truncate_series(std::move(next.ahat), trim);

    if (it.check_stochastic) {
        check_reduced_series(next.a, "cr_iterate A", true);
        check_reduced_series(next.ahat, "cr_iterate Ahat", true);
    }
    return next;
}

double cr_stop_metric(const CRIterate& it) {
    const Mat head = it.a_minus1 + it.ahat.coeffs.front();
    double worst = 0.0;
    for (int r = 0; r < head.rows(); ++r) {
        double rs = 0.0;
        for (int c = 0; c < head.cols(); ++c) rs += head(r, c);
        worst = std::max(worst, std::fabs(1.0 - rs));
    }
    return worst;
}

Mat cr_g_estimate(const CRIterate& it) {
    const Mat lhs = Mat::identity(it.a.order()) - it.ahat.coeffs.front();
    return solve(lhs, it.a_minus1);
}

double gamma_n(const CRIterate& it) {
    const CRSplit sp = cr_split(it);
    const Mat lhs = Mat::identity(it.a.order()) - sp.alpha.sum();
    const Mat v1 = transpose(solve(transpose(lhs), transpose(sp.beta.sum())));
    return 2.0 * (1.0 + inf_norm(v1));
}

double error_bound_exp(double upsilon, double gamma, int n) {
    if (upsilon < 0.0 || !std::isfinite(upsilon))
        fail(Errc::invalid_argument, "error_bound_exp: upsilon must be >= 0");
    if (!(gamma > 1.0)) fail(Errc::invalid_argument, "error_bound_exp: gamma must exceed 1");
    if (n < 0) fail(Errc::invalid_argument, "error_bound_exp: n must be >= 0");
    return upsilon * (std::pow(gamma, n + 1) - 1.0) / (gamma - 1.0);
}

// Record the growth diagnostics of the current state; dense solves can
// fail on exotic shifted series, in which case the entry is skipped at
// rendering time (stored as NaN).
void cr_record_diagnostics(CRDiagnostics& diag, const CRIterate& it) {
    double g = std::numeric_limits<double>::quiet_NaN();
    double v = std::numeric_limits<double>::quiet_NaN();
    try {
        g = gamma_n(it);
        v = g / 2.0 - 1.0;
    } catch (const SolverError&) {
    }
    diag.gamma.push_back(g);
    diag.v_norm.push_back(v);
    const Mat total = it.a.sum();
    double defect = 0.0;
    for (int r = 0; r < total.rows(); ++r) {
        double rs = 0.0;
        for (int c = 0; c < total.cols(); ++c) rs += total(r, c);
        defect = std::max(defect, std::fabs(1.0 - rs));
    }
    diag.w_defect.push_back(defect);
}

static std::vector<double> flatten(const Mat& a) {
    return a.data();
}

std::pair<GminResult, CRDiagnostics> cr_solve_gmin(const MG1Model& model, double eps,
                                                   int max_iter) {
    if (!(eps > 0.0) || !std::isfinite(eps))
        fail(Errc::invalid_argument, "cr_solve_gmin: eps must be positive");
    if (max_iter < 1) fail(Errc::invalid_argument, "cr_solve_gmin: max_iter must be >= 1");

    GminResult res;
    CRDiagnostics diag;
    // Degenerate chain without down-transitions: G = 0 exactly.
    if (max_abs(model.a_minus1()) == 0.0) {
        res.g = Mat(model.m, model.m);
        res.iterations = 0;
        return {res, diag};
    }

    CRIterate it = cr_begin(model);
    res.residual_history.push_back(cr_stop_metric(it));
    cr_record_diagnostics(diag, it);
    while (res.residual_history.back() > eps) {
        if (it.n >= max_iter) {
            Mat j;
            try {
                j = cr_g_estimate(it);
            } catch (const SolverError&) {
                j = Mat(model.m, model.m);
            }
            throw NoConvergenceError(
                "cyclic reduction: stop metric " + std::to_string(res.residual_history.back()) +
                    " above eps after " + std::to_string(it.n) + " sweeps",
                res.residual_history, flatten(j), it.n);
        }
        it = cr_iterate(it, eps);
        res.residual_history.push_back(cr_stop_metric(it));
        cr_record_diagnostics(diag, it);
    }
    res.g = cr_g_estimate(it);
    res.iterations = it.n;

    double gamma_max = 0.0;
    for (double g : diag.gamma)
        if (std::isfinite(g)) gamma_max = std::max(gamma_max, g);
    if (gamma_max > 1.0)
        diag.bound_exp = error_bound_exp(std::numeric_limits<double>::epsilon(), gamma_max,
                                         res.iterations);
    return {res, diag};
}

// Evaluate A_-1 + sum_{i=0..s} A_i X^{i+1} with the coefficient blocks
// kept on the left (Horner form).
static Mat chain_map(const MG1Model& model, const Mat& x) {
    const int s = model.a.size() - 2;  // top exponent
    Mat p = model.a.coeffs.back();
    for (int i = s - 1; i >= 0; --i) p = model.a.get(i) + p * x;
    return model.a_minus1() + p * x;
}

Mat fixed_point_gmin(const MG1Model& model, double tol, long max_iter) {
    if (!(tol > 0.0)) fail(Errc::invalid_argument, "fixed_point_gmin: tol must be positive");
    Mat x(model.m, model.m);
    for (long k = 0; k < max_iter; ++k) {
        Mat nx = chain_map(model, x);
        const double delta = inf_norm(nx - x);
        x = std::move(nx);
        if (delta <= tol) return x;
    }
    throw NoConvergenceError("fixed_point_gmin: no convergence within " +
                                 std::to_string(max_iter) + " iterations",
                             {}, flatten(x), static_cast<int>(std::min<long>(max_iter, 1 << 30)));
}

double residual_gmin(const MG1Model& model, const Mat& g) {
    return inf_norm(g - chain_map(model, g));
}

}  // namespace qcr
