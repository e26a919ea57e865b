// errors.hpp -- error taxonomy shared by all solver modules.
//
// Every failure the library can raise is classified into one of the
// categories below.  The C API and the CLI map these categories onto
// stable integer codes / process exit codes, so the enum values here
// must stay in sync with the public header.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcr {

enum class Errc {
    parse_error = 1,         // malformed input text (syntax)
    validation_error,        // well-formed input violating model invariants
    invalid_argument,        // bad parameter passed to an operation
    singular_matrix,         // a required dense factorization broke down
    no_convergence,          // an iteration hit its cap before its tolerance
    numerical_breakdown,     // a computed quantity violated a numeric guard
    precondition_violation,  // caller-visible precondition not met (e.g. non-ergodic)
    degenerate_boundary,     // boundary eigenproblem has a defective unit eigenvalue
    singular_symbol,         // a Toeplitz symbol sample is (near-)singular
    io_error,                // file system problem (CLI layer)
    internal_error,          // unexpected condition; always a bug
};

// Human-readable stable tag for a category ("validation-error", ...).
const char* errc_name(Errc c) noexcept;

class SolverError : public std::runtime_error {
public:
    SolverError(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// No-convergence failures keep what the iteration had produced so far:
// callers (and error reports) can still inspect the partial solution and
// the full residual history.
class NoConvergenceError : public SolverError {
public:
    NoConvergenceError(const std::string& message, std::vector<double> history,
                       std::vector<double> partial, int iterations)
        : SolverError(Errc::no_convergence, message),
          residual_history(std::move(history)),
          partial_solution(std::move(partial)),
          iterations(iterations) {}

    std::vector<double> residual_history;  // stop-metric per iteration
    std::vector<double> partial_solution;  // row-major matrix snapshot (may be empty)
    int iterations = 0;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw SolverError(code, message);
}

}  // namespace qcr
