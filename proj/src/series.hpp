// series.hpp -- finite matrix power series and block-Toeplitz kernels.
//
// A MatrixSeries is a finite Laurent-style series  S(z) = sum_i S_i z^i
// with square blocks of a common order and consecutive exponents
// start .. start + len - 1.  These series carry the block coefficients of
// the Markov-chain transition operator, so the algebra below (products,
// truncation, banded-Toeplitz inversion heads) is the workhorse of the
// cyclic-reduction solver.

#pragma once

#include <utility>
#include <vector>

#include "dense.hpp"

namespace qcr {

struct MatrixSeries {
    int start = 0;            // exponent of coeffs[0]
    std::vector<Mat> coeffs;  // consecutive exponents, each m x m

    int size() const { return static_cast<int>(coeffs.size()); }
    int degree() const { return start + size() - 1; }
    int order() const { return coeffs.empty() ? 0 : coeffs.front().rows(); }

    // Coefficient of z^idx; zero matrix outside the stored band.
    Mat get(int idx) const;

    // Value at z = 1 (plain sum of the coefficients).
    Mat sum() const;
};

// Block discrete Fourier transform of a length-N sequence of blocks.
// forward:  X_k = sum_j x_j e^{-2 pi i j k / N}
// inverse:  x_j = (1/N) sum_k X_k e^{+2 pi i j k / N}
// Power-of-two lengths use an iterative radix-2 transform per block
// entry; other lengths fall back to the direct O(N^2) sum.
std::vector<CMat> block_dft(const std::vector<CMat>& x, bool inverse);

// Series product c(z) = a(z) b(z) with a's blocks kept on the left in
// every product term.  Evaluated by block DFT on the smallest power of
// two strictly greater than deg(a) + deg(b); the inverse transform must
// come back real (tolerance 1e-9 relative), otherwise the routine throws
// numerical-breakdown.
MatrixSeries series_mul(const MatrixSeries& a, const MatrixSeries& b);

// Leading q block coefficients of the inverse of the semi-infinite
// lower block triangular Toeplitz matrix with first column (c_0, c_1, ...).
//
// Doubling scheme: with y(z) the current head of c(z)^{-1} of length q,
//   w_i = [c(z) y(z)]_{q+i},   u_i = -[y(z) w(z)]_i,   i = 0..q-1,
// and the refreshed head is (y, u) of length 2q.  The head is accepted
// once  W - sum_{i<q} y_i <= eps  holds elementwise, where
// W = (sum_i c_i)^{-1} is the limit of the row sums of the inverse.
// q is capped at 2^14; passing the cap raises no-convergence.
//
// Returns {q, k} where k_i = y_i^T: the caller feeds transposed blocks
// c_i and gets back the transposed head, which is how the upper block
// triangular systems of cyclic reduction are reduced to this routine.
std::pair<int, std::vector<Mat>> lt_toeplitz_inverse_head(const std::vector<Mat>& c, double eps);

// Infinity norm of the elementwise absolute-value coefficient sum: the
// natural norm of the block-Toeplitz operator induced by the series.
double max_norm_series(const MatrixSeries& s);

// Drop the longest trailing run of coefficients whose elementwise
// cumulative absolute sum stays strictly below eps in every entry.  The
// leading coefficient is never dropped and start is never changed.
MatrixSeries truncate_series(MatrixSeries s, double eps);

}  // namespace qcr
