// stationary.hpp -- stationary distribution and queueing metrics.
//
// Once G is known, the stationary row vector pi = (pi_0, pi_1, ...) of
// the M/G/1-type chain follows from a censored-chain argument: build the
// star matrices A*_i = sum_{k>=i} A_k G^{k-i} (and B*_i likewise from
// the boundary row), solve the boundary eigenproblem for pi_0, and
// unroll the remaining levels by the stable forward recursion
//   pi_i = (pi_0 B*_i + sum_{k=1}^{i-1} pi_k A*_{i-k}) (I - A*_0)^{-1}.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "model.hpp"

namespace qcr {

struct DriftReport {
    std::vector<double> alpha;  // stationary phase distribution of sum(A_i)
    std::vector<double> a_vec;  // mean level increment per phase: sum_i i A_i 1
    std::vector<double> b_vec;  // boundary first moment: sum_{i>=1} i B_i 1
    double varrho = 0.0;        // drift alpha . a_vec
    bool ergodic = false;       // varrho < 0
};

// Mean-drift analysis.  Requires the phase process sum(A_i) to be
// irreducible (checked on the sparsity pattern with threshold 1e-14);
// otherwise precondition-violation.
DriftReport drift(const MG1Model& model);

// Star matrices (A*, B*), both with start 0.  A*_i = sum_{k>=i} A_k
// G^{k-i}, computed by one Horner sweep from the top coefficient down;
// B*_i analogously from the boundary blocks.
std::pair<MatrixSeries, MatrixSeries> star_matrices(const MG1Model& model, const Mat& g);

// Group inverse X = (S + 1 alpha)^{-1} (I - 1 alpha) of a singular
// irreducible generator-like matrix S = I - A with left null vector
// alpha (alpha S = 0, alpha 1 = 1).  Satisfies S X S = S, X S X = X,
// X 1 = 0 and alpha X = 0.
Mat group_inverse(const Mat& s, const std::vector<double>& alpha);

// Boundary level: pi_0 = t v with v the left unit eigenvector of B*_0
// and t the normalization from the mean-drift balance
//   t = -varrho / ( v.b - varrho (v.1) + v (B(1) - I) X a ).
// The unit eigenvalue of B*_0 must be simple (rank(B*_0 - I) = m-1),
// otherwise degenerate-boundary.
std::vector<double> boundary_pi0(const MG1Model& model, const Mat& g, const DriftReport& dr);

struct StationaryResult {
    std::vector<std::vector<double>> pi;  // pi[0] = boundary level
    int levels = 0;                       // number of stored levels (K + 1)
    double tail_mass_bound = 0.0;         // mass discarded before renormalization
    double residual = 0.0;                // || pi (P_trunc - I) ||, sum of abs entries
    bool truncated = false;               // true when k_max stopped the recursion
};

// Unroll levels until the level mass falls below
// tail_tol * (1 - ||1 - G 1||_inf) or k_max levels are reached (the
// latter sets the truncated flag).  The returned pi is renormalized to
// total mass one; tail_mass_bound reports the pre-normalization defect.
StationaryResult stationary_levels(const MG1Model& model, const Mat& g,
                                   const std::vector<double>& pi0, double tail_tol, long k_max);

struct QueueMetrics {
    std::vector<double> tail_probs;       // P[level > k], k = 0 .. K-1
    double mean_queue = 0.0;              // E[level]
    double mean_queue_tail_est = 0.0;     // truncation allowance on E[level]
    std::optional<double> mean_sojourn;   // E[level] / nu when nu is known
};

QueueMetrics queue_metrics(const StationaryResult& st, std::optional<double> nu);

}  // namespace qcr
