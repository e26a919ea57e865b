// report.cpp -- report rendering.

#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

#include <json.hpp>

namespace qcr {

using ordered_json = nlohmann::ordered_json;

static std::string iso_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

static std::string fmt_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

static std::string join_nums(const std::vector<double>& v, const char* sep = ";") {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += fmt_num(v[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

static ordered_json to_json(const Report& r, bool with_timestamp) {
    ordered_json j;
    if (with_timestamp) j["timestamp"] = iso_utc_now();
    ordered_json model;
    model["type"] = r.model_type;
    model["m"] = r.m;
    model["a_blocks"] = r.a_blocks;
    model["b_blocks"] = r.b_blocks;
    if (r.nu) model["nu"] = *r.nu;
    j["model"] = std::move(model);

    if (r.drift) {
        ordered_json d;
        d["alpha"] = r.drift->alpha;
        d["a"] = r.drift->a_vec;
        d["b"] = r.drift->b_vec;
        d["rho"] = r.drift->varrho;
        d["ergodic"] = r.drift->ergodic;
        j["drift"] = std::move(d);
    }
    if (r.solver) {
        ordered_json s;
        s["method"] = r.solver->method;
        s["eps"] = r.solver->eps;
        s["max_iter"] = r.solver->max_iter;
        s["iterations"] = r.solver->iterations;
        s["history"] = r.solver->history;
        s["g"] = r.solver->g;
        s["residual"] = r.solver->residual;
        s["g_row_defect"] = r.solver->g_row_defect;
        if (r.solver->sigma) s["sigma"] = *r.solver->sigma;
        if (r.solver->certified_bound) s["certified_bound"] = *r.solver->certified_bound;
        j["solver"] = std::move(s);
    }
    if (r.stationary) {
        ordered_json s;
        s["levels"] = r.stationary->levels;
        s["truncated"] = r.stationary->truncated;
        s["tail_mass_bound"] = r.stationary->tail_mass_bound;
        s["residual"] = r.stationary->residual;
        s["pi0"] = r.stationary->pi0;
        s["level_mass"] = r.stationary->level_mass;
        j["stationary"] = std::move(s);
    }
    if (r.metrics) {
        ordered_json s;
        s["tail_probs"] = r.metrics->tail_probs;
        s["mean_queue"] = r.metrics->mean_queue;
        s["mean_queue_tail_est"] = r.metrics->mean_queue_tail_est;
        if (r.metrics->mean_sojourn) s["mean_sojourn"] = *r.metrics->mean_sojourn;
        j["metrics"] = std::move(s);
    }
    if (r.diagnostics) {
        ordered_json s;
        s["gamma"] = r.diagnostics->gamma;
        s["v_norm"] = r.diagnostics->v_norm;
        s["w_defect"] = r.diagnostics->w_defect;
        s["bound_exp"] = r.diagnostics->bound_exp;
        j["diagnostics"] = std::move(s);
    }
    if (r.emulation) {
        ordered_json s;
        s["n_samples"] = r.emulation->n_samples;
        s["fidelity"] = r.emulation->fidelity;
        s["success_prob"] = r.emulation->success_prob;
        s["m_const"] = r.emulation->m_const;
        j["emulation"] = std::move(s);
    }
    if (r.estimate) {
        ordered_json s;
        s["n"] = r.estimate->n;
        s["qubits"] = r.estimate->qubits;
        s["mu"] = r.estimate->mu;
        s["t_load"] = r.estimate->t_load;
        s["t_qft"] = r.estimate->t_qft;
        s["t_oracle"] = r.estimate->t_oracle;
        s["t_readout"] = r.estimate->t_readout;
        s["total"] = r.estimate->total;
        j["estimate"] = std::move(s);
    }
    if (!r.warnings.empty()) j["warnings"] = r.warnings;
    return j;
}

// ---------------------------------------------------------------------------
// CSV: one "section,key,value" row per field; vector values joined by ';'
// ---------------------------------------------------------------------------

static void csv_row(std::ostringstream& out, const char* sec, const char* key,
                    const std::string& value) {
    out << sec << ',' << key << ',' << value << '\n';
}

static std::string to_csv(const Report& r, bool with_timestamp) {
    std::ostringstream out;
    out << "section,key,value\n";
    if (with_timestamp) csv_row(out, "run", "timestamp", iso_utc_now());
    csv_row(out, "model", "type", r.model_type);
    csv_row(out, "model", "m", std::to_string(r.m));
    csv_row(out, "model", "a_blocks", std::to_string(r.a_blocks));
    csv_row(out, "model", "b_blocks", std::to_string(r.b_blocks));
    if (r.nu) csv_row(out, "model", "nu", fmt_num(*r.nu));
    if (r.drift) {
        csv_row(out, "drift", "alpha", join_nums(r.drift->alpha));
        csv_row(out, "drift", "a", join_nums(r.drift->a_vec));
        csv_row(out, "drift", "b", join_nums(r.drift->b_vec));
        csv_row(out, "drift", "rho", fmt_num(r.drift->varrho));
        csv_row(out, "drift", "ergodic", r.drift->ergodic ? "true" : "false");
    }
    if (r.solver) {
        csv_row(out, "solver", "method", r.solver->method);
        csv_row(out, "solver", "eps", fmt_num(r.solver->eps));
        csv_row(out, "solver", "max_iter", std::to_string(r.solver->max_iter));
        csv_row(out, "solver", "iterations", std::to_string(r.solver->iterations));
        csv_row(out, "solver", "history", join_nums(r.solver->history));
        std::string g;
        for (size_t i = 0; i < r.solver->g.size(); ++i) {
            if (i) g += "|";
            g += join_nums(r.solver->g[i]);
        }
        csv_row(out, "solver", "g", g);
        csv_row(out, "solver", "residual", fmt_num(r.solver->residual));
        csv_row(out, "solver", "g_row_defect", fmt_num(r.solver->g_row_defect));
        if (r.solver->sigma) csv_row(out, "solver", "sigma", fmt_num(*r.solver->sigma));
        if (r.solver->certified_bound)
            csv_row(out, "solver", "certified_bound", fmt_num(*r.solver->certified_bound));
    }
    if (r.stationary) {
        csv_row(out, "stationary", "levels", std::to_string(r.stationary->levels));
        csv_row(out, "stationary", "truncated", r.stationary->truncated ? "true" : "false");
        csv_row(out, "stationary", "tail_mass_bound", fmt_num(r.stationary->tail_mass_bound));
        csv_row(out, "stationary", "residual", fmt_num(r.stationary->residual));
        csv_row(out, "stationary", "pi0", join_nums(r.stationary->pi0));
        csv_row(out, "stationary", "level_mass", join_nums(r.stationary->level_mass));
    }
    if (r.metrics) {
        csv_row(out, "metrics", "tail_probs", join_nums(r.metrics->tail_probs));
        csv_row(out, "metrics", "mean_queue", fmt_num(r.metrics->mean_queue));
        csv_row(out, "metrics", "mean_queue_tail_est", fmt_num(r.metrics->mean_queue_tail_est));
        if (r.metrics->mean_sojourn)
            csv_row(out, "metrics", "mean_sojourn", fmt_num(*r.metrics->mean_sojourn));
    }
    if (r.diagnostics) {
        csv_row(out, "diagnostics", "gamma", join_nums(r.diagnostics->gamma));
        csv_row(out, "diagnostics", "v_norm", join_nums(r.diagnostics->v_norm));
        csv_row(out, "diagnostics", "w_defect", join_nums(r.diagnostics->w_defect));
        csv_row(out, "diagnostics", "bound_exp", fmt_num(r.diagnostics->bound_exp));
    }
    if (r.emulation) {
        csv_row(out, "emulation", "n_samples", std::to_string(r.emulation->n_samples));
        csv_row(out, "emulation", "fidelity", fmt_num(r.emulation->fidelity));
        csv_row(out, "emulation", "success_prob", fmt_num(r.emulation->success_prob));
        csv_row(out, "emulation", "m_const", fmt_num(r.emulation->m_const));
    }
    if (r.estimate) {
        csv_row(out, "estimate", "n", std::to_string(r.estimate->n));
        csv_row(out, "estimate", "qubits", std::to_string(r.estimate->qubits));
        csv_row(out, "estimate", "mu", fmt_num(r.estimate->mu));
        csv_row(out, "estimate", "t_load", fmt_num(r.estimate->t_load));
        csv_row(out, "estimate", "t_qft", fmt_num(r.estimate->t_qft));
        csv_row(out, "estimate", "t_oracle", fmt_num(r.estimate->t_oracle));
        csv_row(out, "estimate", "t_readout", fmt_num(r.estimate->t_readout));
        csv_row(out, "estimate", "total", fmt_num(r.estimate->total));
    }
    for (size_t i = 0; i < r.warnings.size(); ++i)
        csv_row(out, "warnings", std::to_string(i).c_str(), r.warnings[i]);
    return out.str();
}

// ---------------------------------------------------------------------------
// Text
// ---------------------------------------------------------------------------

static std::string to_text(const Report& r, bool with_timestamp) {
    std::ostringstream out;
    out << "qcr report";
    if (with_timestamp) out << " (" << iso_utc_now() << ")";
    out << "\n";
    out << "model: type=" << r.model_type << " m=" << r.m << " A-blocks=" << r.a_blocks
        << " B-blocks=" << r.b_blocks;
    if (r.nu) out << " nu=" << fmt_num(*r.nu);
    out << "\n";
    if (r.drift) {
        out << "drift: rho=" << fmt_num(r.drift->varrho)
            << " ergodic=" << (r.drift->ergodic ? "yes" : "no") << "\n";
        out << "  alpha = [" << join_nums(r.drift->alpha, ", ") << "]\n";
        out << "  a     = [" << join_nums(r.drift->a_vec, ", ") << "]\n";
        out << "  b     = [" << join_nums(r.drift->b_vec, ", ") << "]\n";
    }
    if (r.solver) {
        out << "solver: method=" << r.solver->method << " eps=" << fmt_num(r.solver->eps)
            << " iterations=" << r.solver->iterations << "\n";
        out << "  stop metric history = [" << join_nums(r.solver->history, ", ") << "]\n";
        out << "  G =\n";
        for (const auto& row : r.solver->g) out << "    [" << join_nums(row, ", ") << "]\n";
        out << "  residual = " << fmt_num(r.solver->residual)
            << "  row-sum defect = " << fmt_num(r.solver->g_row_defect) << "\n";
        if (r.solver->sigma)
            out << "  sigma = " << fmt_num(*r.solver->sigma)
                << "  certified bound = " << fmt_num(*r.solver->certified_bound) << "\n";
    }
    if (r.stationary) {
        out << "stationary: levels=" << r.stationary->levels
            << " truncated=" << (r.stationary->truncated ? "yes" : "no")
            << " tail_mass_bound=" << fmt_num(r.stationary->tail_mass_bound)
            << " residual=" << fmt_num(r.stationary->residual) << "\n";
        out << "  pi0 = [" << join_nums(r.stationary->pi0, ", ") << "]\n";
        out << "  level masses = [" << join_nums(r.stationary->level_mass, ", ") << "]\n";
    }
    if (r.metrics) {
        out << "metrics: mean_queue=" << fmt_num(r.metrics->mean_queue)
            << " tail_est=" << fmt_num(r.metrics->mean_queue_tail_est);
        if (r.metrics->mean_sojourn) out << " mean_sojourn=" << fmt_num(*r.metrics->mean_sojourn);
        out << "\n";
        out << "  tail_probs = [" << join_nums(r.metrics->tail_probs, ", ") << "]\n";
    }
    if (r.diagnostics) {
        out << "diagnostics: bound_exp=" << fmt_num(r.diagnostics->bound_exp) << "\n";
        out << "  gamma    = [" << join_nums(r.diagnostics->gamma, ", ") << "]\n";
        out << "  v_norm   = [" << join_nums(r.diagnostics->v_norm, ", ") << "]\n";
        out << "  w_defect = [" << join_nums(r.diagnostics->w_defect, ", ") << "]\n";
    }
    if (r.emulation) {
        out << "emulation: n_samples=" << r.emulation->n_samples
            << " fidelity=" << fmt_num(r.emulation->fidelity)
            << " success_prob=" << fmt_num(r.emulation->success_prob)
            << " m_const=" << fmt_num(r.emulation->m_const) << "\n";
    }
    if (r.estimate) {
        out << "estimate: n=" << r.estimate->n << " qubits=" << r.estimate->qubits
            << " mu=" << fmt_num(r.estimate->mu) << "\n";
        out << "  cost: load=" << fmt_num(r.estimate->t_load)
            << " qft=" << fmt_num(r.estimate->t_qft)
            << " oracle=" << fmt_num(r.estimate->t_oracle)
            << " readout=" << fmt_num(r.estimate->t_readout)
            << " total=" << fmt_num(r.estimate->total) << "\n";
    }
    for (const std::string& w : r.warnings) out << "warning: " << w << "\n";
    return out.str();
}

std::string render_report(const Report& rep, ReportFormat fmt, bool with_timestamp) {
    switch (fmt) {
        case ReportFormat::json: return to_json(rep, with_timestamp).dump(2) + "\n";
        case ReportFormat::csv: return to_csv(rep, with_timestamp);
        case ReportFormat::text: return to_text(rep, with_timestamp);
    }
    fail(Errc::invalid_argument, "render_report: unknown format");
}

}  // namespace qcr
