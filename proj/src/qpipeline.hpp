// qpipeline.hpp -- deterministic emulation of the circulant solve pipeline.
//
// One cyclic-reduction sweep is dominated by products of the form
// f2(z) (I - alpha(z))^{-1} x(z).  Embedding the truncated series into
// N-periodic sequences turns every such product into a block circulant
// operation, which diagonalizes under the discrete Fourier transform:
//
//   state -> QFT -> divide by F1 samples -> multiply by F2 samples -> IQFT.
//
// This is the classical shadow of a quantum implementation in which the
// QFT is a circuit, the division is a matrix-inversion subroutine with a
// success amplitude proportional to 1/kappa, and the samples come from a
// block-encoded symbol oracle.  The emulator executes the same algebra
// in floating point: its output differs from exact cyclic reduction only
// through the periodic wrap-around of the length-N embedding, so the
// fidelity improves as N grows, and the tracked success probability is
// exactly the acceptance probability the quantum device would see.

#pragma once

#include <utility>
#include <vector>

#include "cr.hpp"

namespace qcr {

// A truncated symbol f(z) = sum_i T_i z^i together with its values
//   F_j = f(e^{2 pi i j / n}),   j = 0 .. n-1.
struct BlockSymbol {
    int n = 0;
    MatrixSeries coeffs;
    std::vector<CMat> samples;
};

// Sample the symbol on the n-th roots of unity.  n must be a power of
// two strictly larger than the coefficient band width.
BlockSymbol symbol_samples(const MatrixSeries& coeffs, int n);

// First block row (c_0, ..., c_{n-1}) of the block circulant operator
// C y |_i = sum_l c_{(l-i) mod n} y_l induced by the symbol:
// c_k = (1/n) sum_j F_j e^{2 pi i j k / n}.  The row is real for real
// coefficient symbols; residual imaginary parts beyond tolerance raise
// numerical-breakdown.
std::vector<Mat> circulant_from_symbol(const BlockSymbol& sym);

// Normalized register of n levels with m amplitudes per level, stored
// level-major: amp[l * m + r].  norm_factor carries the physical scale
// so that norm_factor * amp reproduces the unnormalized data.
struct StateVector {
    int n = 0, m = 0;
    std::vector<cplx> amp;
    double norm_factor = 1.0;
};

// Wrap raw amplitudes into a normalized state (invalid-argument when the
// norm vanishes or the length is not a multiple of m).
StateVector make_state(std::vector<cplx> raw, int m);

// Fourier transform over the level index, acting on each phase lane:
//   qft:  y_i = (1/sqrt n) sum_l x_l e^{+2 pi i l i / n}
// and iqft is its inverse (conjugate kernel).  Both are unitary and
// leave norm_factor untouched.  n must be a power of two.
StateVector qft(const StateVector& s);
StateVector iqft(const StateVector& s);

// Divide level j by the sample F_j (solve F_j y_j = x_j).  m_const must
// be a lower bound on the smallest singular value over all samples; the
// returned probability  m_const^2 sum_j |y_j|^2  is the success
// probability of the matrix-inversion subroutine run on this state.
// Samples with sigma_min < 1e-12 raise singular-symbol.
std::pair<StateVector, double> eigen_invert(const StateVector& s, const BlockSymbol& f1,
                                            double m_const);

// Multiply level j by the sample F_j.
StateVector diag_apply(const StateVector& s, const BlockSymbol& f2);

struct EmulationResult {
    CRIterate next;             // emulated successor iterate
    double fidelity = 0.0;      // series-norm distance to the exact sweep
    double success_prob = 0.0;  // product of the two channel acceptances
    double m_const = 0.0;       // singular-value floor used by the inversion
    int n_samples = 0;
};

// Run one full cyclic-reduction sweep through the circulant pipeline:
// an A-channel (f2 = beta) producing the Y update and a censored channel
// (f2 = beta-hat) producing the Yhat update, each fed column by column
// with the beta coefficients.  n_samples must be a power of two with
// n_samples >= 4 * d for the current reduction width d.
EmulationResult emulate_cr_iteration_q(const CRIterate& it, int n_samples);

struct ResourceEstimate {
    long n = 0;         // register length (power of two)
    long qubits = 0;    // n (2 log2 n + 1)
    double mu = 0.0;    // condition-number proxy of the inverted symbol
    double t_load = 0.0;
    double t_qft = 0.0;
    double t_oracle = 0.0;
    double t_readout = 0.0;
    double total = 0.0;
};

// Cost model for one pipeline pass: state preparation mu*tau_load, QFT
// mu*log2(n)^2, symbol oracle mu*tau_oracle, readout tau_readout.
// n_samples = 0 selects the minimum power of two >= m * d_max.
ResourceEstimate resource_estimate(long m, long d_max, double mu, double tau_load,
                                   double tau_oracle, double tau_readout, long n_samples = 0);

// Convenience driver: mu = max_j sigma_max(F1_j) / min_j sigma_min(F1_j)
// for the initial symbol f1 = I - alpha of the model, then the cost
// model above with unit tau weights.
ResourceEstimate estimate_for_model(const MG1Model& model, long n_samples = 0);

}  // namespace qcr
