// model.hpp -- structured Markov chain models of M/G/1 type.
//
// The transition matrix is upper block Hessenberg and block Toeplitz
// except for its first block row:
//
//        | B_0  B_1  B_2  ... |
//   P =  | A_-1 A_0  A_1  ... |
//        |      A_-1 A_0  ... |
//        |           ...      |
//
// with nonnegative m x m blocks and stochastic row sums.  A quasi
// birth-death (QBD) process is the block tridiagonal special case
// A = (A_-1, A_0, A_1), B = (B_0, B_1) with B_1 = A_1.

#pragma once

#include <optional>
#include <vector>

#include "series.hpp"

namespace qcr {

struct MG1Model {
    int m = 0;            // phase/block order
    MatrixSeries a;       // repeating blocks, start = -1: (A_-1, A_0, ..., A_s)
    MatrixSeries b;       // boundary blocks, start = 0: (B_0, B_1, ...)
    std::optional<double> nu;  // arrival rate for sojourn-time metrics
    bool is_qbd = false;

    const Mat& a_minus1() const { return a.coeffs.front(); }
};

// Checks the structural invariants: block shapes, elementwise
// nonnegativity, and row sums of both sum(A_i) and sum(B_i) within tol
// of one.  Violations raise validation-error naming the offending block
// and row.
void validate_model(const MG1Model& model, double tol = 1e-8);

// Builders; both run validate_model before returning.
MG1Model make_mg1(std::vector<Mat> a_coeffs, std::vector<Mat> b_coeffs,
                  std::optional<double> nu = std::nullopt, double tol = 1e-8);
MG1Model make_qbd(const Mat& a_m1, const Mat& a_0, const Mat& a_1, const Mat& b_0,
                  std::optional<double> nu = std::nullopt, double tol = 1e-8);

}  // namespace qcr
