// report.hpp -- structured run report and its renderers.
//
// Everything a run computed lands in one Report value; renderers turn it
// into JSON (machine-readable), CSV (section,key,value triples), or
// plain text.  All numeric content is deterministic for a given input
// and option set; the only run-dependent field is the optional
// timestamp, which callers can disable for byte-stable output.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpipeline.hpp"
#include "stationary.hpp"

namespace qcr {

enum class ReportFormat { json = 0, csv = 1, text = 2 };

struct Report {
    // Model echo.
    std::string model_type;  // "mg1" or "qbd"
    int m = 0;
    int a_blocks = 0;
    int b_blocks = 0;
    std::optional<double> nu;

    std::optional<DriftReport> drift;

    struct Solver {
        std::string method;  // "cr" or "cr-shift"
        double eps = 0.0;
        int max_iter = 0;
        int iterations = 0;
        std::vector<double> history;        // stop metric per state (n = 0 first)
        std::vector<std::vector<double>> g; // solution matrix, row major
        double residual = 0.0;              // || G - A_-1 - sum A_i G^{i+1} ||_inf
        double g_row_defect = 0.0;          // || 1 - G 1 ||_inf
        std::optional<double> sigma;            // shifted runs only
        std::optional<double> certified_bound;  // eps * sigma
    };
    std::optional<Solver> solver;

    struct Stationary {
        int levels = 0;
        bool truncated = false;
        double tail_mass_bound = 0.0;
        double residual = 0.0;
        std::vector<double> pi0;
        std::vector<double> level_mass;  // mass of each stored level
    };
    std::optional<Stationary> stationary;

    struct Metrics {
        std::vector<double> tail_probs;
        double mean_queue = 0.0;
        double mean_queue_tail_est = 0.0;
        std::optional<double> mean_sojourn;
    };
    std::optional<Metrics> metrics;

    struct Diagnostics {
        std::vector<double> gamma;
        std::vector<double> v_norm;
        std::vector<double> w_defect;
        double bound_exp = 0.0;
    };
    std::optional<Diagnostics> diagnostics;

    struct Emulation {
        int n_samples = 0;
        double fidelity = 0.0;
        double success_prob = 0.0;
        double m_const = 0.0;
    };
    std::optional<Emulation> emulation;

    std::optional<ResourceEstimate> estimate;

    std::vector<std::string> warnings;
};

std::string render_report(const Report& rep, ReportFormat fmt, bool with_timestamp);

}  // namespace qcr
