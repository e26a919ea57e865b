// runner.cpp -- analysis orchestration.

#include "runner.hpp"

#include <cmath>
#include <string>

#include "cr.hpp"
#include "shift.hpp"

namespace qcr {

static std::vector<std::vector<double>> matrix_rows(const Mat& a) {
    std::vector<std::vector<double>> rows(a.rows(), std::vector<double>(a.cols()));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) rows[i][j] = a(i, j);
    return rows;
}

Report run_analysis(const MG1Model& model, const RunOptions& opts) {
    validate_model(model);
    Report rep;
    rep.model_type = model.is_qbd ? "qbd" : "mg1";
    rep.m = model.m;
    rep.a_blocks = model.a.size();
    rep.b_blocks = model.b.size();
    rep.nu = model.nu;

    const unsigned sec = opts.sections;
    const bool needs_chain = sec & (SEC_SOLVER | SEC_STATIONARY | SEC_METRICS);

    std::optional<DriftReport> dr;
    if ((sec & SEC_DRIFT) || needs_chain) {
        dr = drift(model);
        rep.drift = dr;
    }
    if (!needs_chain) {
        // Drift-only runs report non-ergodicity as an ordinary result.
        if (sec & SEC_EMULATION) {
            long n = opts.n_samples;
            const CRIterate it0 = cr_begin(model);
            if (n == 0) {
                const CRSplit sp = cr_split(it0);
                n = 16;
                while (n < 8 * sp.d) n <<= 1;
            }
            const EmulationResult em = emulate_cr_iteration_q(it0, static_cast<int>(n));
            Report::Emulation e;
            e.n_samples = em.n_samples;
            e.fidelity = em.fidelity;
            e.success_prob = em.success_prob;
            e.m_const = em.m_const;
            rep.emulation = e;
        }
        if (sec & SEC_ESTIMATE) rep.estimate = estimate_for_model(model, opts.n_samples);
        return rep;
    }

    if (!dr->ergodic)
        fail(Errc::precondition_violation,
             "chain is not ergodic: drift rho = " + std::to_string(dr->varrho) +
                 " (must be negative); stationary analysis undefined");

    Mat g;
    Report::Solver sol;
    sol.eps = opts.eps;
    sol.max_iter = opts.max_iter;
    CRDiagnostics diag;
    if (opts.use_shift) {
        const std::vector<double>* u = opts.u ? &*opts.u : nullptr;
        auto [sr, sd] = cr_solve_shifted(model, opts.eps, opts.max_iter, u);
        g = sr.g;
        sol.method = "cr-shift";
        sol.iterations = sr.iterations;
        sol.history = sr.metric_history;
        sol.sigma = sr.sigma;
        sol.certified_bound = sr.certified_bound;
        diag = sd;
    } else {
        auto [gr, gd] = cr_solve_gmin(model, opts.eps, opts.max_iter);
        g = gr.g;
        sol.method = "cr";
        sol.iterations = gr.iterations;
        sol.history = gr.residual_history;
        diag = gd;
    }
    sol.g = matrix_rows(g);
    sol.residual = residual_gmin(model, g);
    double gdef = 0.0;
    for (int r = 0; r < model.m; ++r) {
        double rs = 0.0;
        for (int c = 0; c < model.m; ++c) rs += g(r, c);
        gdef = std::max(gdef, std::fabs(1.0 - rs));
    }
    sol.g_row_defect = gdef;
    rep.solver = std::move(sol);

    if (sec & SEC_DIAGNOSTICS) {
        Report::Diagnostics d;
        d.gamma = diag.gamma;
        d.v_norm = diag.v_norm;
        d.w_defect = diag.w_defect;
        d.bound_exp = diag.bound_exp;
        rep.diagnostics = std::move(d);
    }

    if (sec & (SEC_STATIONARY | SEC_METRICS)) {
        const std::vector<double> pi0 = boundary_pi0(model, g, *dr);
        const StationaryResult st = stationary_levels(model, g, pi0, opts.tail_tol, opts.k_max);
        Report::Stationary s;
        s.levels = st.levels;
        s.truncated = st.truncated;
        s.tail_mass_bound = st.tail_mass_bound;
        s.residual = st.residual;
        s.pi0 = st.pi[0];
        s.level_mass.reserve(st.pi.size());
        for (const auto& level : st.pi) {
            double mass = 0.0;
            for (double x : level) mass += x;
            s.level_mass.push_back(mass);
        }
        rep.stationary = std::move(s);
        if (st.truncated)
            rep.warnings.push_back("stationary recursion truncated at k_max = " +
                                   std::to_string(opts.k_max) +
                                   " before reaching tail_tol; tail mass bound " +
                                   std::to_string(st.tail_mass_bound));
        if (sec & SEC_METRICS) {
            const QueueMetrics qm = queue_metrics(st, model.nu);
            Report::Metrics mt;
            mt.tail_probs = qm.tail_probs;
            mt.mean_queue = qm.mean_queue;
            mt.mean_queue_tail_est = qm.mean_queue_tail_est;
            mt.mean_sojourn = qm.mean_sojourn;
            rep.metrics = std::move(mt);
        }
    }

    if (sec & SEC_EMULATION) {
        long n = opts.n_samples;
        const CRIterate it0 = cr_begin(model);
        if (n == 0) {
            const CRSplit sp = cr_split(it0);
            n = 16;
            while (n < 8 * sp.d) n <<= 1;
        }
        const EmulationResult em = emulate_cr_iteration_q(it0, static_cast<int>(n));
        Report::Emulation e;
        e.n_samples = em.n_samples;
        e.fidelity = em.fidelity;
        e.success_prob = em.success_prob;
        e.m_const = em.m_const;
        rep.emulation = e;
    }
    if (sec & SEC_ESTIMATE) rep.estimate = estimate_for_model(model, opts.n_samples);
    return rep;
}

}  // namespace qcr
