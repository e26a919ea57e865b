// dense.hpp -- small dense matrix kernels (real and complex).
//
// The solver works with blocks of modest order (phase dimension M is
// typically < 100), so a plain row-major container plus textbook
// partial-pivot LU is both adequate and easy to audit.  All routines
// throw SolverError on rank/pivot breakdown instead of returning junk.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace qcr {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Real matrices
// ---------------------------------------------------------------------------

class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), v_(static_cast<size_t>(rows) * cols, fill) {}

    static Mat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return v_.empty(); }

    double& operator()(int r, int c) { return v_[static_cast<size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return v_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<double>& data() const { return v_; }
    std::vector<double>& data() { return v_; }

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(double s);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> v_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(double s, Mat a);

Mat transpose(const Mat& a);
Mat abs_elems(const Mat& a);
bool all_finite(const Mat& a);
double max_abs(const Mat& a);

// Max row sum of absolute values (the operator infinity norm).
double inf_norm(const Mat& a);

// Row-vector times matrix: x^T A, with x.size() == A.rows().
std::vector<double> rowvec_mul(const std::vector<double>& x, const Mat& a);

// Matrix times column vector: A x.
std::vector<double> matvec(const Mat& a, const std::vector<double>& x);

// ---------------------------------------------------------------------------
// LU factorization with partial pivoting
// ---------------------------------------------------------------------------

struct Lu {
    Mat lu;                 // packed L (unit diagonal) and U
    std::vector<int> piv;   // row permutation
};

// Factor a square matrix.  A pivot whose magnitude falls below
// rel_tol * max|A| is treated as rank deficiency (singular-matrix).
Lu lu_factor(Mat a, double rel_tol = 1e-13);

// Solve A X = B for X given the factorization of A.
Mat lu_solve(const Lu& f, const Mat& b);

Mat solve(const Mat& a, const Mat& b);
Mat inverse(const Mat& a);

// Numerical rank by Gaussian elimination with complete pivoting; entries
// below rel_tol * max(initial max pivot, scale) count as zero.  Pass the
// natural magnitude of the problem as `scale` when the matrix itself may be
// a near-zero difference (otherwise the threshold collapses with it).
int rank_estimate(Mat a, double rel_tol = 1e-8, double scale = 0.0);

// Left fixed row vector: x^T P = x^T with sum(x) = 1,  for P with unit
// spectral radius (stochastic or close to it).  Solved by replacing one
// equation of (P^T - I) x = 0 with the normalization row.  Throws
// singular-matrix when the fixed vector is not unique.
std::vector<double> left_fixed_vector(const Mat& p);

// ---------------------------------------------------------------------------
// Complex matrices (used by the DFT / circulant pipeline)
// ---------------------------------------------------------------------------

class CMat {
public:
    CMat() = default;
    CMat(int rows, int cols) : rows_(rows), cols_(cols), v_(static_cast<size_t>(rows) * cols) {}
    explicit CMat(const Mat& re);

    static CMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int r, int c) { return v_[static_cast<size_t>(r) * cols_ + c]; }
    cplx operator()(int r, int c) const { return v_[static_cast<size_t>(r) * cols_ + c]; }

    CMat& operator+=(const CMat& o);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> v_;
};

CMat operator*(const CMat& a, const CMat& b);
CMat operator*(cplx s, CMat a);
CMat operator+(CMat a, const CMat& b);

struct CLu {
    CMat lu;
    std::vector<int> piv;
};

CLu clu_factor(CMat a, double rel_tol = 1e-14);

// Solve A x = b (b and result are length-n vectors).
std::vector<cplx> clu_solve(const CLu& f, const std::vector<cplx>& b);

// Solve A^H x = b using the factorization of A (adjoint solve).
std::vector<cplx> clu_solve_adjoint(const CLu& f, const std::vector<cplx>& b);

// Largest / smallest singular value estimates by power iteration on
// A^H A resp. (A A^H)^{-1}.  Deterministic all-ones start vector; the
// iteration is exact for 1x1 blocks and accurate to ~1e-10 relative for
// the well-separated spectra that arise here.  sigma_min_estimate
// returns 0 when the matrix fails to factor.
double sigma_max_estimate(const CMat& a);
double sigma_min_estimate(const CMat& a);

}  // namespace qcr
