// shift.cpp -- shifted cyclic reduction.

#include "shift.hpp"

#include <cmath>
#include <string>

#include "stationary.hpp"

namespace qcr {

ShiftedModel shift_model(const MG1Model& model, const std::vector<double>* u) {
    const int m = model.m;
    std::vector<double> dir;
    if (u == nullptr) {
        dir.assign(m, 1.0 / m);
    } else {
        dir = *u;
        if (static_cast<int>(dir.size()) != m)
            fail(Errc::invalid_argument, "shift direction u must have length " + std::to_string(m));
        double sum = 0.0;
        for (double x : dir) {
            if (!(x > 0.0) || !std::isfinite(x))
                fail(Errc::invalid_argument, "shift direction u must be strictly positive");
            sum += x;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            fail(Errc::invalid_argument,
                 "shift direction u must sum to 1, got " + std::to_string(sum));
    }

    // Q = 1 u^T.
    Mat q(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) q(i, j) = dir[j];

    const int s = model.a.size() - 2;  // top exponent of the A band
    // Suffix sums suf_i = sum_{j > i} A_j.
    std::vector<Mat> suf(s + 1, Mat(m, m));
    for (int i = s - 1; i >= 0; --i) suf[i] = model.a.get(i + 1) + suf[i + 1];

    ShiftedModel sm;
    sm.base = model;
    sm.u = dir;
    sm.d.start = -1;
    sm.d.coeffs.push_back(model.a_minus1() - model.a_minus1() * q);
    for (int i = 0; i <= s; ++i) sm.d.coeffs.push_back(model.a.get(i) + suf[i] * q);
    sm.dhat.start = 0;
    sm.dhat.coeffs.assign(sm.d.coeffs.begin() + 1, sm.d.coeffs.end());

    // Consistency assertions.  (1) The shifted down-block has zero row
    // sums.  (2) The suffix-sum construction agrees with the equivalent
    // prefix form A_i - (sum_{j<=i} A_j - I) Q; the two orders differ by
    // exactly the stochastic defect of sum(A), so allow for it.
    double defect = 0.0;
    {
        const Mat total = model.a.sum();
        for (int r = 0; r < m; ++r) {
            double rs = 0.0;
            for (int c = 0; c < m; ++c) rs += total(r, c);
            defect = std::max(defect, std::fabs(rs - 1.0));
        }
    }
    const double check_tol = 1e-12 + defect;
    for (int r = 0; r < m; ++r) {
        double rs = 0.0;
        for (int c = 0; c < m; ++c) rs += sm.d.coeffs.front()(r, c);
        if (std::fabs(rs) > check_tol)
            fail(Errc::numerical_breakdown,
                 "shift_model: shifted down-block row sum " + std::to_string(rs) + " not zero");
    }
    Mat prefix = model.a_minus1();
    for (int i = 0; i <= s; ++i) {
        prefix += model.a.get(i);
        const Mat alt = model.a.get(i) - (prefix - Mat::identity(m)) * q;
        if (inf_norm(sm.d.get(i) - alt) > check_tol)
            fail(Errc::numerical_breakdown,
                 "shift_model: suffix and prefix forms disagree at block " + std::to_string(i));
    }
    return sm;
}

// Residual mass of the censored series above level zero.
static double shifted_metric(const CRIterate& it) {
    double s = 0.0;
    for (int i = 1; i < it.ahat.size(); ++i) s += inf_norm(it.ahat.coeffs[i]);
    return s;
}

std::pair<ShiftResult, CRDiagnostics> cr_solve_shifted(const MG1Model& model, double eps,
                                                       int max_iter,
                                                       const std::vector<double>* u) {
    if (!(eps > 0.0) || !std::isfinite(eps))
        fail(Errc::invalid_argument, "cr_solve_shifted: eps must be positive");
    if (max_iter < 1) fail(Errc::invalid_argument, "cr_solve_shifted: max_iter must be >= 1");

    const DriftReport dr = drift(model);
    if (!dr.ergodic)
        fail(Errc::precondition_violation,
             "shifted reduction needs an ergodic chain: drift rho = " + std::to_string(dr.varrho) +
                 " (must be negative)");

    const ShiftedModel sm = shift_model(model, u);
    CRIterate it;
    it.n = 0;
    it.a = sm.d;
    it.ahat = sm.dhat;
    it.a_minus1 = model.a_minus1();  // censoring keeps the original down-block
    it.check_stochastic = false;

    ShiftResult res;
    CRDiagnostics diag;
    res.metric_history.push_back(shifted_metric(it));
    cr_record_diagnostics(diag, it);
    while (res.metric_history.back() > eps) {
        if (it.n >= max_iter) {
            Mat j(model.m, model.m);
            try {
                j = cr_g_estimate(it);
            } catch (const SolverError&) {
            }
            throw NoConvergenceError("shifted cyclic reduction: metric " +
                                         std::to_string(res.metric_history.back()) +
                                         " above eps after " + std::to_string(it.n) + " sweeps",
                                     res.metric_history, j.data(), it.n);
        }
        it = cr_iterate(it, eps);
        res.metric_history.push_back(shifted_metric(it));
        cr_record_diagnostics(diag, it);
    }

    const Mat inv = inverse(Mat::identity(model.m) - it.ahat.coeffs.front());
    res.g = inv * model.a_minus1();
    res.iterations = it.n;
    res.sigma = 2.0 * inf_norm(inv);
    res.certified_bound = eps * res.sigma;
    return {res, diag};
}

double error_bound_lin(double upsilon, double theta, double sigma_rate, int n) {
    if (upsilon < 0.0 || !std::isfinite(upsilon))
        fail(Errc::invalid_argument, "error_bound_lin: upsilon must be >= 0");
    if (!(theta > 0.0)) fail(Errc::invalid_argument, "error_bound_lin: theta must be positive");
    if (!(sigma_rate > 0.0 && sigma_rate < 1.0))
        fail(Errc::invalid_argument, "error_bound_lin: sigma_rate must lie in (0, 1)");
    if (n < 0) fail(Errc::invalid_argument, "error_bound_lin: n must be >= 0");
    const double s2 = sigma_rate * sigma_rate;
    return upsilon * (1.0 + n * std::exp(2.0 * theta * s2 / (1.0 - s2)));
}

}  // namespace qcr
