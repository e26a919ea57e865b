// shift.hpp -- spectral shift acceleration for cyclic reduction.
//
// For an ergodic chain the symbol det(zI - A(z)) has a root at z = 1
// that throttles the reduction rate.  Shifting moves that root to zero:
// with Q = 1 u^T (u positive, summing to one) the shifted blocks
//
//   D_-1 = A_-1 (I - Q),      D_i = A_i + (sum_{j>i} A_j) Q   (i >= 0)
//
// define a series with the unit root removed, on which cyclic reduction
// converges at the square of the subdominant ratio.  The G matrix of the
// original chain is recovered from the shifted fixed point because the
// down-block A_-1 in the censoring formula stays unshifted.

#pragma once

#include <utility>
#include <vector>

#include "cr.hpp"

namespace qcr {

struct ShiftedModel {
    MG1Model base;          // the original (unshifted) model
    std::vector<double> u;  // shift direction, positive entries, sum 1
    MatrixSeries d;         // shifted repeating blocks, start = -1
    MatrixSeries dhat;      // initial censored series Dhat_i = D_i, i >= 0
};

// Build the shifted series.  u = nullptr selects the uniform direction
// (1/m, ..., 1/m).  A u of wrong length, with nonpositive entries, or
// not summing to one raises invalid-argument.
ShiftedModel shift_model(const MG1Model& model, const std::vector<double>* u);

struct ShiftResult {
    Mat g;                               // G of the *original* chain
    int iterations = 0;
    std::vector<double> metric_history;  // sum_{i>=1} ||Dhat_i^(n)||_inf per state
    double sigma = 0.0;                  // 2 ||(I - Dhat_0)^{-1}||_inf at termination
    double certified_bound = 0.0;        // eps * sigma
};

// Run cyclic reduction on the shifted series.  Requires an ergodic model
// (precondition-violation otherwise, message carries the drift).  The
// stochasticity guards of cr_iterate are disabled: shifted series are
// legitimately non-stochastic.
std::pair<ShiftResult, CRDiagnostics> cr_solve_shifted(const MG1Model& model, double eps,
                                                       int max_iter,
                                                       const std::vector<double>* u);

// upsilon * (1 + n * exp(2 theta sigma^2 / (1 - sigma^2))): linear-in-n
// forward bound for the shifted reduction, valid for decay rate
// sigma in (0, 1) and conditioning theta > 0.
double error_bound_lin(double upsilon, double theta, double sigma_rate, int n);

}  // namespace qcr
