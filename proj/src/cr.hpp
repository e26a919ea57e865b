// cr.hpp -- cyclic reduction for the minimal solution G of
//
//   X = A_-1 + A_0 X + A_1 X^2 + ... + A_s X^{s+1}.
//
// One cyclic-reduction sweep halves the odd-indexed levels of the
// infinite block Hessenberg chain: split the current series into parts
// of even and odd exponent, eliminate the odd levels through the head of
// an upper block triangular Toeplitz inverse, and read the new, smaller
// chain off the Schur complement.  The iterates converge quadratically
// to a chain whose level-0 censoring yields G directly.

#pragma once

#include <utility>
#include <vector>

#include "model.hpp"

namespace qcr {

// State of the reduction after n sweeps.
struct CRIterate {
    int n = 0;             // sweeps applied so far
    MatrixSeries a;        // A^(n), start = -1
    MatrixSeries ahat;     // Ahat^(n), start = 0 (stored nonnegative)
    Mat a_minus1;          // original A_-1; fixed across sweeps
    int q = 0;             // Toeplitz-inverse head length of the last sweep
    int d_prime = 0;       // band width of the last produced series
    bool check_stochastic = true;  // off for shifted (non-stochastic) series
};

// Decomposition of an iterate into the even/odd symbol parts
//   alpha_i = A_2i,  beta_i = A_{2i-1},  bhat_i = Ahat_{2i+1},
// each reindexed to start 0, with d the even reduction width.  Shared
// with the circulant emulation, which feeds the same parts through DFT
// space.
struct CRSplit {
    int d = 0;
    MatrixSeries alpha, beta, bhat;
};
CRSplit cr_split(const CRIterate& it);

CRIterate cr_begin(const MG1Model& model);

// One sweep; eps controls both the Toeplitz-head acceptance test and the
// tail truncation of the produced series.
CRIterate cr_iterate(const CRIterate& it, double eps);

// Convergence functional  || 1 - (A_-1 + Ahat_0^(n)) 1 ||_inf : distance
// of the level-0 censored chain from stochasticity.
double cr_stop_metric(const CRIterate& it);

// Current G approximation  (I - Ahat_0^(n))^{-1} A_-1.
Mat cr_g_estimate(const CRIterate& it);

struct GminResult {
    Mat g;
    int iterations = 0;
    std::vector<double> residual_history;  // stop metric per state, n = 0 first
};

// Per-state growth diagnostics of a reduction run.
struct CRDiagnostics {
    std::vector<double> gamma;     // gamma_n = 2 (1 + ||beta(1)(I - alpha(1))^{-1}||_inf)
    std::vector<double> v_norm;    // the norm inside gamma_n
    std::vector<double> w_defect;  // || 1 - sum_i A_i^(n) 1 ||_inf (0 in exact arithmetic)
    double bound_exp = 0.0;        // forward bound from the gamma history
};

std::pair<GminResult, CRDiagnostics> cr_solve_gmin(const MG1Model& model, double eps, int max_iter);

// Append the growth diagnostics of one state to diag (used by both the
// plain and the shifted drivers).
void cr_record_diagnostics(CRDiagnostics& diag, const CRIterate& it);

// Defensive reference: the natural fixed-point iteration
// X <- A_-1 + sum_{i>=0} A_i X^{i+1} starting at X = 0, linearly
// convergent, monotone nondecreasing.
Mat fixed_point_gmin(const MG1Model& model, double tol, long max_iter);

// || G - A_-1 - sum_{i>=0} A_i G^{i+1} ||_inf.
double residual_gmin(const MG1Model& model, const Mat& g);

// Growth factor of one sweep at the current state.
double gamma_n(const CRIterate& it);

// upsilon * (gamma^{n+1} - 1) / (gamma - 1): accumulated local error of
// size upsilon amplified by gamma per sweep over n sweeps.
double error_bound_exp(double upsilon, double gamma, int n);

}  // namespace qcr
