// test_series.cpp -- power series and block-Toeplitz kernels.

#include <doctest.h>

#include <random>

#include "series.hpp"
#include "support/oracles.hpp"

using namespace qcr;

namespace {

Mat scalar(double v) {
    Mat a(1, 1);
    a(0, 0) = v;
    return a;
}

MatrixSeries random_series(std::mt19937_64& rng, int start, int len, int m) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    MatrixSeries s;
    s.start = start;
    for (int i = 0; i < len; ++i) {
        Mat blk(m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) blk(r, c) = unif(rng);
        s.coeffs.push_back(std::move(blk));
    }
    return s;
}

}  // namespace

TEST_SUITE("series") {

TEST_CASE("block_dft matches the direct sum and round-trips") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int n : {1, 2, 4, 8, 16, 3, 6, 12}) {  // powers of two and fallback sizes
        for (int m : {1, 2, 3}) {
            std::vector<CMat> x(n, CMat(m, m));
            for (int j = 0; j < n; ++j)
                for (int r = 0; r < m; ++r)
                    for (int c = 0; c < m; ++c) x[j](r, c) = cplx(unif(rng), unif(rng));
            const std::vector<CMat> fwd = block_dft(x, false);
            const std::vector<CMat> ref = oracle::naive_dft(x, false);
            for (int j = 0; j < n; ++j)
                for (int r = 0; r < m; ++r)
                    for (int c = 0; c < m; ++c) CHECK(std::abs(fwd[j](r, c) - ref[j](r, c)) < 1e-10);
            const std::vector<CMat> back = block_dft(fwd, true);
            for (int j = 0; j < n; ++j)
                for (int r = 0; r < m; ++r)
                    for (int c = 0; c < m; ++c) CHECK(std::abs(back[j](r, c) - x[j](r, c)) < 1e-10);
        }
    }
}

TEST_CASE("series_mul equals naive convolution with left blocks") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 3);
        const MatrixSeries a = random_series(rng, -1 + static_cast<int>(rng() % 3),
                                             1 + static_cast<int>(rng() % 6), m);
        const MatrixSeries b = random_series(rng, -2 + static_cast<int>(rng() % 4),
                                             1 + static_cast<int>(rng() % 6), m);
        const MatrixSeries got = series_mul(a, b);
        const MatrixSeries ref = oracle::naive_series_mul(a, b);
        REQUIRE(got.start == ref.start);
        REQUIRE(got.size() == ref.size());
        for (int i = 0; i < got.size(); ++i)
            CHECK(inf_norm(got.coeffs[i] - ref.coeffs[i]) < 1e-11);
    }
}

TEST_CASE("series_mul keeps matrix factors in order") {
    // Non-commuting blocks: a single-coefficient product must be a*b.
    Mat a0(2, 2), b0(2, 2);
    a0(0, 1) = 1.0;  // nilpotent up
    b0(1, 0) = 1.0;  // nilpotent down
    const MatrixSeries p = series_mul(MatrixSeries{0, {a0}}, MatrixSeries{0, {b0}});
    // a0*b0 = [[1,0],[0,0]] while b0*a0 = [[0,0],[0,1]].
    CHECK(p.coeffs[0](0, 0) == doctest::Approx(1.0));
    CHECK(p.coeffs[0](1, 1) == doctest::Approx(0.0));
}

TEST_CASE("scalar identity symbol accepts the one-term head") {
    const auto [q, k] = lt_toeplitz_inverse_head({scalar(1.0)}, 1e-12);
    CHECK(q == 1);
    REQUIRE(k.size() == 1);
    CHECK(k[0](0, 0) == doctest::Approx(1.0));
}

TEST_CASE("toeplitz inverse head matches dense inversion") {
    std::mt19937_64 rng(90210);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 12; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 3);
        const int band = 1 + static_cast<int>(rng() % 4);
        // Diagonally dominant c_0 minus a substochastic tail keeps the
        // semi-infinite system invertible with decaying inverse head.
        std::vector<Mat> c(band, Mat(m, m));
        for (int r = 0; r < m; ++r) {
            c[0](r, r) = 1.0;
            double rest = 0.8;
            for (int i = 0; i < band; ++i)
                for (int s = 0; s < m; ++s) {
                    if (i == 0 && s == r) continue;
                    const double v = unif(rng) * rest / (band * m);
                    c[i](r, s) -= v;
                }
        }
        const auto [q, head] = lt_toeplitz_inverse_head(c, 1e-10);
        // lt_toeplitz_inverse_head transposes on the way out; undo that
        // to compare against the plain dense head.
        const std::vector<Mat> dense = oracle::dense_lt_inverse_head(c, q);
        REQUIRE(static_cast<int>(head.size()) == q);
        for (int i = 0; i < q; ++i) CHECK(inf_norm(transpose(head[i]) - dense[i]) < 1e-9);
        // Head acceptance: the remaining row-sum defect is within eps.
        Mat c_sum(m, m), h_sum(m, m);
        for (const Mat& blk : c) c_sum += blk;
        for (const Mat& blk : head) h_sum += transpose(blk);
        const Mat w = inverse(c_sum);
        for (int r = 0; r < m; ++r)
            for (int s = 0; s < m; ++s) CHECK(w(r, s) - h_sum(r, s) <= 1e-10);
    }
}

TEST_CASE("toeplitz head cap raises no-convergence") {
    // c(z) = 1 - z: the inverse head is all ones and never meets the
    // acceptance test, so the doubling must hit its cap.
    CHECK_THROWS_AS(lt_toeplitz_inverse_head({scalar(1.0), scalar(-1.0 + 1e-13)}, 1e-10),
                    SolverError);
    try {
        lt_toeplitz_inverse_head({scalar(1.0), scalar(-1.0 + 1e-13)}, 1e-10);
    } catch (const SolverError& e) {
        CHECK(e.code() == Errc::no_convergence);
    }
}

TEST_CASE("singular leading block raises singular-matrix") {
    try {
        lt_toeplitz_inverse_head({scalar(0.0), scalar(1.0)}, 1e-10);
        FAIL("expected throw");
    } catch (const SolverError& e) {
        CHECK(e.code() == Errc::singular_matrix);
    }
}

TEST_CASE("max_norm_series sums absolute coefficients") {
    MatrixSeries s{-1, {scalar(-0.5), scalar(0.25)}};
    CHECK(max_norm_series(s) == doctest::Approx(0.75));
    Mat a(2, 2), b(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = -2.0;
    b(0, 0) = -3.0;
    b(1, 1) = 1.0;
    CHECK(max_norm_series(MatrixSeries{0, {a, b}}) == doctest::Approx(6.0));
}

TEST_CASE("truncate_series drops small tails only") {
    const MatrixSeries s{0, {scalar(1.0), scalar(1e-12), scalar(1e-12)}};
    const MatrixSeries t = truncate_series(s, 1e-10);
    CHECK(t.size() == 1);
    CHECK(t.start == 0);
    // cumulative rule: two entries of 1e-12 sum beyond a 1.5e-12 cut
    const MatrixSeries t2 = truncate_series(s, 1.5e-12);
    CHECK(t2.size() == 2);
    // eps = 0 keeps everything (strict < never holds)
    const MatrixSeries t3 = truncate_series(s, 0.0);
    CHECK(t3.size() == 3);
    // an exactly zero tail goes away for any positive eps
    const MatrixSeries z{0, {scalar(2.0), scalar(0.0), scalar(0.0)}};
    CHECK(truncate_series(z, 1e-300).size() == 1);
    // the leading coefficient survives even when tiny
    const MatrixSeries lead{0, {scalar(1e-300)}};
    CHECK(truncate_series(lead, 1.0).size() == 1);
}

}  // TEST_SUITE
