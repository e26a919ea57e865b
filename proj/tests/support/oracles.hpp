// oracles.hpp -- independent reference implementations for tests.
//
// Everything here is written the slow, obvious way (direct sums, dense
// permutations, full LU on the expanded system) so that the production
// kernels can be checked against structurally different computations.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cr.hpp"
#include "model.hpp"

namespace qcr::oracle {

// Direct O(N^2) block DFT with the same kernel conventions as block_dft.
std::vector<CMat> naive_dft(const std::vector<CMat>& x, bool inverse);

// Direct convolution product, a's blocks left.
MatrixSeries naive_series_mul(const MatrixSeries& a, const MatrixSeries& b);

// First q block coefficients of the inverse of the dense lower block
// triangular Toeplitz matrix with first column (c_0, ..., c_{k-1}),
// expanded to q block rows and inverted by LU.
std::vector<Mat> dense_lt_inverse_head(const std::vector<Mat>& c, int q);

// One cyclic reduction sweep done on the dense level-expanded chain:
// build I - P on `levels` levels, permute odd levels first, form the
// Schur complement onto the even levels, and read the reduced blocks
// off its first two block rows.  Returns {a_next (start -1), ahat_next
// (start 0)} with band length `band`.
std::pair<MatrixSeries, MatrixSeries> dense_cr_sweep(const MatrixSeries& a,
                                                     const MatrixSeries& ahat, int levels,
                                                     int band);

// Stationary distribution of the chain truncated to `levels` levels
// (boundary + levels-1 repeating rows), last column augmented so rows
// sum to one, solved by Grassmann-Taksar-Heyman elimination.  GTH never
// subtracts, so the result is componentwise accurate even when the
// truncated chain is badly conditioned (long chains with tiny tail
// probabilities defeat a plain bordered linear solve).
std::vector<std::vector<double>> dense_truncated_stationary(const MG1Model& model, int levels);

// Dense block circulant from a first block row, applied to a vector.
std::vector<cplx> circulant_apply(const std::vector<Mat>& row, const std::vector<cplx>& x, int m);

// Reproducible ergodic model generator: strictly positive blocks,
// exactly stochastic row sums, drift at most -0.02.
MG1Model random_ergodic_model(std::mt19937_64& rng, int m, int a_blocks, int b_blocks);

}  // namespace qcr::oracle
