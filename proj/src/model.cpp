// model.cpp -- model construction and invariant checks.

#include "model.hpp"

#include <cmath>
#include <string>

namespace qcr {

static void check_series(const MatrixSeries& s, int m, const char* tag, double tol) {
    if (s.coeffs.empty())
        fail(Errc::validation_error, std::string(tag) + ": no coefficient blocks");
    for (int i = 0; i < s.size(); ++i) {
        const Mat& blk = s.coeffs[i];
        const std::string where = std::string(tag) + "[" + std::to_string(s.start + i) + "]";
        if (blk.rows() != m || blk.cols() != m)
            fail(Errc::validation_error, where + ": expected " + std::to_string(m) + "x" +
                                             std::to_string(m) + " block, got " +
                                             std::to_string(blk.rows()) + "x" +
                                             std::to_string(blk.cols()));
        if (!all_finite(blk)) fail(Errc::validation_error, where + ": non-finite entry");
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c)
                if (blk(r, c) < 0.0)
                    fail(Errc::validation_error,
                         where + ": negative entry " + std::to_string(blk(r, c)) + " at (" +
                             std::to_string(r) + "," + std::to_string(c) + ")");
    }
    const Mat total = s.sum();
    for (int r = 0; r < m; ++r) {
        double rs = 0.0;
        for (int c = 0; c < m; ++c) rs += total(r, c);
        if (std::fabs(rs - 1.0) > tol)
            fail(Errc::validation_error, std::string(tag) + ": row " + std::to_string(r) +
                                             " of the coefficient sum is " + std::to_string(rs) +
                                             ", expected 1 within " + std::to_string(tol));
    }
}

void validate_model(const MG1Model& model, double tol) {
    if (model.m < 1) fail(Errc::validation_error, "block order m must be >= 1");
    if (model.a.start != -1)
        fail(Errc::validation_error,
             "A series must start at exponent -1, got " + std::to_string(model.a.start));
    if (model.b.start != 0)
        fail(Errc::validation_error,
             "B series must start at exponent 0, got " + std::to_string(model.b.start));
    check_series(model.a, model.m, "A", tol);
    check_series(model.b, model.m, "B", tol);
    if (model.nu && *model.nu <= 0.0)
        fail(Errc::validation_error, "arrival rate nu must be positive");
    if (model.is_qbd) {
        if (model.a.size() != 3)
            fail(Errc::validation_error, "QBD model needs exactly A_-1, A_0, A_1");
        if (model.b.size() != 2)
            fail(Errc::validation_error, "QBD model needs exactly B_0, B_1");
        const Mat diff = model.b.coeffs[1] - model.a.coeffs[2];
        if (max_abs(diff) > tol)
            fail(Errc::validation_error, "QBD model requires B_1 = A_1");
    }
}

MG1Model make_mg1(std::vector<Mat> a_coeffs, std::vector<Mat> b_coeffs, std::optional<double> nu,
                  double tol) {
    MG1Model model;
    if (a_coeffs.empty()) fail(Errc::validation_error, "A: no coefficient blocks");
    model.m = a_coeffs.front().rows();
    model.a = MatrixSeries{-1, std::move(a_coeffs)};
    model.b = MatrixSeries{0, std::move(b_coeffs)};
    model.nu = nu;
    validate_model(model, tol);
    return model;
}

MG1Model make_qbd(const Mat& a_m1, const Mat& a_0, const Mat& a_1, const Mat& b_0,
                  std::optional<double> nu, double tol) {
    MG1Model model;
    model.m = a_m1.rows();
    model.a = MatrixSeries{-1, {a_m1, a_0, a_1}};
    model.b = MatrixSeries{0, {b_0, a_1}};  // the boundary repeats the up-block
    model.nu = nu;
    model.is_qbd = true;
    validate_model(model, tol);
    return model;
}

}  // namespace qcr
