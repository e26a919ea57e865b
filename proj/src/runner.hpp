// runner.hpp -- orchestration of a full analysis run.
//
// The CLI subcommands map to section sets; the runner executes exactly
// the work the requested sections need and fills one Report.

#pragma once

#include "model.hpp"
#include "report.hpp"

namespace qcr {

// Section bits (stable: also exposed through the C API).
enum : unsigned {
    SEC_DRIFT = 1u << 0,
    SEC_SOLVER = 1u << 1,
    SEC_STATIONARY = 1u << 2,
    SEC_METRICS = 1u << 3,
    SEC_DIAGNOSTICS = 1u << 4,
    SEC_EMULATION = 1u << 5,
    SEC_ESTIMATE = 1u << 6,
};

struct RunOptions {
    double eps = 1e-10;
    int max_iter = 64;
    bool use_shift = false;
    std::optional<std::vector<double>> u;  // shift direction; empty = uniform
    double tail_tol = 1e-12;
    long k_max = 1000;
    long n_samples = 0;  // 0 = choose automatically
    unsigned sections = SEC_DRIFT | SEC_SOLVER | SEC_DIAGNOSTICS;
};

// Run the requested sections on a validated model.  The solver,
// stationary and metrics sections require an ergodic chain and raise
// precondition-violation (with the drift in the message) otherwise; a
// drift-only run reports non-ergodicity as a result instead.
Report run_analysis(const MG1Model& model, const RunOptions& opts);

}  // namespace qcr
