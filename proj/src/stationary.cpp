// stationary.cpp -- stationary distribution pipeline.

#include "stationary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qcr {

// Strong connectivity of the sparsity pattern of a nonnegative matrix:
// breadth-first search from state 0 on the graph and on its reverse.
static bool strongly_connected(const Mat& a, double threshold) {
    const int n = a.rows();
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<bool> seen(n, false);
        std::vector<int> stack{0};
        seen[0] = true;
        int reached = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w) {
                const double edge = pass == 0 ? a(v, w) : a(w, v);
                if (!seen[w] && edge > threshold) {
                    seen[w] = true;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached != n) return false;
    }
    return true;
}

DriftReport drift(const MG1Model& model) {
    const int m = model.m;
    const Mat a_total = model.a.sum();
    if (!strongly_connected(a_total, 1e-14))
        fail(Errc::precondition_violation,
             "drift: phase process sum(A_i) is reducible; mean-drift analysis undefined");

    DriftReport dr;
    dr.alpha = left_fixed_vector(a_total);
    dr.a_vec.assign(m, 0.0);
    for (int i = 0; i < model.a.size(); ++i) {
        const double weight = model.a.start + i;
        if (weight == 0.0) continue;
        for (int r = 0; r < m; ++r) {
            double rs = 0.0;
            for (int c = 0; c < m; ++c) rs += model.a.coeffs[i](r, c);
            dr.a_vec[r] += weight * rs;
        }
    }
    dr.b_vec.assign(m, 0.0);
    for (int i = 0; i < model.b.size(); ++i) {
        const double weight = model.b.start + i;
        if (weight == 0.0) continue;
        for (int r = 0; r < m; ++r) {
            double rs = 0.0;
            for (int c = 0; c < m; ++c) rs += model.b.coeffs[i](r, c);
            dr.b_vec[r] += weight * rs;
        }
    }
    dr.varrho = 0.0;
    for (int r = 0; r < m; ++r) dr.varrho += dr.alpha[r] * dr.a_vec[r];
    dr.ergodic = dr.varrho < 0.0;
    return dr;
}

std::pair<MatrixSeries, MatrixSeries> star_matrices(const MG1Model& model, const Mat& g) {
    const int m = model.m;
    if (g.rows() != m || g.cols() != m)
        fail(Errc::invalid_argument, "star_matrices: G has wrong shape");
    // Horner sweep from the top exponent down: S_k = A_k + S_{k+1} G
    // makes S_k = sum_{j>=k} A_j G^{j-k}; recorded for k >= 0.
    MatrixSeries a_star{0, {}};
    {
        const int top = model.a.degree();
        Mat s = model.a.coeffs.back();
        std::vector<Mat> rev{s};
        for (int k = top - 1; k >= 0; --k) {
            s = model.a.get(k) + s * g;
            rev.push_back(s);
        }
        a_star.coeffs.assign(rev.rbegin(), rev.rend());
    }
    MatrixSeries b_star{0, {}};
    {
        const int top = model.b.degree();
        Mat s = model.b.coeffs.back();
        std::vector<Mat> rev{s};
        for (int k = top - 1; k >= 0; --k) {
            s = model.b.get(k) + s * g;
            rev.push_back(s);
        }
        b_star.coeffs.assign(rev.rbegin(), rev.rend());
    }
    return {std::move(a_star), std::move(b_star)};
}

Mat group_inverse(const Mat& s, const std::vector<double>& alpha) {
    const int n = s.rows();
    if (s.cols() != n || static_cast<int>(alpha.size()) != n)
        fail(Errc::invalid_argument, "group_inverse: shape mismatch");
    // X = (S + 1 alpha)^{-1} (I - 1 alpha): the rank-one correction makes
    // the system nonsingular while projecting out the null direction.
    Mat shifted = s;
    Mat proj = Mat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            shifted(i, j) += alpha[j];
            proj(i, j) -= alpha[j];
        }
    Mat x = solve(shifted, proj);
#ifndef NDEBUG
    // Group-inverse identities; violations indicate a bad alpha.
    const double scale = std::max(1.0, inf_norm(s));
    if (inf_norm(s * x * s - s) > 1e-10 * scale || inf_norm(x * s * x - x) > 1e-10 * scale)
        fail(Errc::numerical_breakdown, "group_inverse: defining identities violated");
#endif
    return x;
}

std::vector<double> boundary_pi0(const MG1Model& model, const Mat& g, const DriftReport& dr) {
    const int m = model.m;
    if (!dr.ergodic)
        fail(Errc::precondition_violation,
             "boundary_pi0: chain not ergodic (drift rho = " + std::to_string(dr.varrho) + ")");
    auto [a_star, b_star] = star_matrices(model, g);
    const Mat& b0s = b_star.coeffs.front();

    // The unit eigenvalue of the stochastic B*_0 must be simple.
    Mat shifted = b0s;
    for (int i = 0; i < m; ++i) shifted(i, i) -= 1.0;
    const int rank = rank_estimate(shifted, 1e-8, 1.0);
    if (rank != m - 1)
        fail(Errc::degenerate_boundary, "boundary_pi0: rank(B*_0 - I) = " + std::to_string(rank) +
                                            ", expected " + std::to_string(m - 1) +
                                            " (unit eigenvalue not simple)");
    const std::vector<double> v = left_fixed_vector(b0s);

    // Normalization via the mean-drift balance.  The generating-function
    // identity pi(z)(I - A(z)) = pi_0 (B(z) - A(z)) gives, at first order
    // around z = 1 and after killing the singular left side with the
    // right null vector 1,
    //   pi(1) a + pi_0 (b - a) = 0,
    // and substituting pi(1) = pi_0 (B(1) - A(1)) X + alpha (the order-0
    // identity solved with the group inverse X of I - A(1)) leaves
    //   t = -varrho / ( v.b - varrho (v.1) + v (B(1) - I) X a ).
    Mat i_minus_a = Mat::identity(m) - model.a.sum();
    const Mat x = group_inverse(i_minus_a, dr.alpha);
    const Mat b_minus_i = model.b.sum() - Mat::identity(m);
    const std::vector<double> xa = matvec(x, dr.a_vec);
    const std::vector<double> bxa = matvec(b_minus_i, xa);
    double v_b = 0.0, v_1 = 0.0, v_bxa = 0.0;
    for (int i = 0; i < m; ++i) {
        v_b += v[i] * dr.b_vec[i];
        v_1 += v[i];
        v_bxa += v[i] * bxa[i];
    }
    const double den = v_b - dr.varrho * v_1 + v_bxa;
    if (std::fabs(den) < 1e-14)
        fail(Errc::numerical_breakdown, "boundary_pi0: normalization denominator vanished");
    const double t = -dr.varrho / den;
    std::vector<double> pi0(m);
    for (int i = 0; i < m; ++i) pi0[i] = t * v[i];
    return pi0;
}

StationaryResult stationary_levels(const MG1Model& model, const Mat& g,
                                   const std::vector<double>& pi0, double tail_tol, long k_max) {
    const int m = model.m;
    if (static_cast<int>(pi0.size()) != m)
        fail(Errc::invalid_argument, "stationary_levels: pi0 has wrong length");
    if (!(tail_tol >= 0.0)) fail(Errc::invalid_argument, "stationary_levels: bad tail_tol");
    if (k_max < 1) fail(Errc::invalid_argument, "stationary_levels: k_max must be >= 1");
    auto [a_star, b_star] = star_matrices(model, g);

    // Stop threshold discounts the sub-stochastic defect of G so that
    // nearly-reducible chains do not stop prematurely.
    double gdefect = 0.0;
    for (int r = 0; r < m; ++r) {
        double rs = 0.0;
        for (int c = 0; c < m; ++c) rs += g(r, c);
        gdefect = std::max(gdefect, std::fabs(1.0 - rs));
    }
    const double stop_mass = tail_tol * std::max(0.0, 1.0 - gdefect);

    const Lu solver = lu_factor(transpose(Mat::identity(m) - a_star.coeffs.front()));

    StationaryResult st;
    st.pi.push_back(pi0);
    for (long i = 1;; ++i) {
        std::vector<double> acc(m, 0.0);
        if (i < b_star.size()) {
            const std::vector<double> t = rowvec_mul(pi0, b_star.coeffs[i]);
            for (int c = 0; c < m; ++c) acc[c] += t[c];
        }
        const long lo = std::max<long>(1, i - (a_star.size() - 1));
        for (long k = lo; k < i; ++k) {
            const std::vector<double> t = rowvec_mul(st.pi[k], a_star.coeffs[i - k]);
            for (int c = 0; c < m; ++c) acc[c] += t[c];
        }
        // pi_i (I - A*_0) = acc  =>  (I - A*_0)^T pi_i^T = acc^T.
        Mat rhs(m, 1);
        for (int c = 0; c < m; ++c) rhs(c, 0) = acc[c];
        const Mat sol = lu_solve(solver, rhs);
        std::vector<double> pi_i(m);
        double mass = 0.0;
        for (int c = 0; c < m; ++c) {
            pi_i[c] = sol(c, 0);
            mass += pi_i[c];
        }
        st.pi.push_back(std::move(pi_i));
        if (mass < stop_mass) break;
        if (i >= k_max) {
            st.truncated = true;
            break;
        }
    }
    st.levels = static_cast<int>(st.pi.size());

    double total = 0.0;
    for (const auto& level : st.pi)
        for (double x : level) total += x;
    if (!(total > 0.0) || !std::isfinite(total))
        fail(Errc::numerical_breakdown, "stationary_levels: nonpositive total mass");
    st.tail_mass_bound = std::max(0.0, 1.0 - total);
    for (auto& level : st.pi)
        for (double& x : level) x /= total;

    // Residual of the truncated global balance pi (P - I) = 0, measured
    // as the sum of absolute entries over all stored levels.
    const int levels = st.levels;
    const int s_top = model.a.degree();
    double residual = 0.0;
    for (int j = 0; j < levels; ++j) {
        std::vector<double> row(m, 0.0);
        if (j < model.b.size()) {
            const std::vector<double> t = rowvec_mul(st.pi[0], model.b.coeffs[j]);
            for (int c = 0; c < m; ++c) row[c] += t[c];
        }
        const int lo = std::max(1, j - s_top);
        for (int i = lo; i < levels && i <= j + 1; ++i) {
            const int e = j - i;  // exponent of the repeating block
            if (e < -1 || e > s_top) continue;
            const std::vector<double> t = rowvec_mul(st.pi[i], model.a.get(e));
            for (int c = 0; c < m; ++c) row[c] += t[c];
        }
        for (int c = 0; c < m; ++c) residual += std::fabs(row[c] - st.pi[j][c]);
    }
    st.residual = residual;
    return st;
}

QueueMetrics queue_metrics(const StationaryResult& st, std::optional<double> nu) {
    QueueMetrics qm;
    const int levels = st.levels;
    std::vector<double> mass(levels, 0.0);
    for (int i = 0; i < levels; ++i)
        for (double x : st.pi[i]) mass[i] += x;

    // Suffix sums give the tail probabilities; nonincreasing by
    // construction since level masses are nonnegative.
    qm.tail_probs.assign(std::max(0, levels - 1), 0.0);
    double suffix = 0.0;
    for (int k = levels - 1; k >= 1; --k) {
        suffix += mass[k];
        qm.tail_probs[k - 1] = suffix;
    }
    double mean = 0.0;
    for (int i = 0; i < levels; ++i) mean += i * mass[i];
    qm.mean_queue = mean;

    // Truncation allowance: extrapolate the discarded tail geometrically
    // from the last two level masses (an estimate, reported as such).
    double ratio = 0.0;
    if (levels >= 2 && mass[levels - 2] > 0.0)
        ratio = std::min(mass[levels - 1] / mass[levels - 2], 1.0 - 1e-9);
    qm.mean_queue_tail_est =
        st.tail_mass_bound * (static_cast<double>(levels) + 1.0 / (1.0 - ratio));

    if (nu) {
        if (!(*nu > 0.0)) fail(Errc::invalid_argument, "queue_metrics: nu must be positive");
        qm.mean_sojourn = mean / *nu;
    }
    return qm;
}

}  // namespace qcr
