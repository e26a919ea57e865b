// test_stationary.cpp -- drift, boundary, level recursion, and metrics.

#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "cr.hpp"
#include "model_io.hpp"
#include "stationary.hpp"
#include "support/oracles.hpp"

using namespace qcr;

namespace {

std::string fixture(const char* name) {
    return std::string(QCR_FIXTURE_DIR) + "/" + name;
}

Mat from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Mat a(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (double v : row) a(i, j++) = v;
        ++i;
    }
    return a;
}

double entry_diff(const Mat& a, const Mat& b) {
    double worst = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) worst = std::max(worst, std::fabs(a(i, j) - b(i, j)));
    return worst;
}

}  // namespace

TEST_SUITE("stationary") {

TEST_CASE("drift of the bundled fixtures") {
    const MG1Model s1 = load_model_file(fixture("s1.json"));
    DriftReport dr = drift(s1);
    CHECK(dr.varrho == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(dr.ergodic);
    REQUIRE(dr.alpha.size() == 1u);
    CHECK(dr.alpha[0] == doctest::Approx(1.0));
    REQUIRE(dr.a_vec.size() == 1u);
    CHECK(dr.a_vec[0] == doctest::Approx(-0.3));
    REQUIRE(dr.b_vec.size() == 1u);
    CHECK(dr.b_vec[0] == doctest::Approx(0.3));

    dr = drift(load_model_file(fixture("qbd_m2.json")));
    CHECK(dr.varrho == doctest::Approx(-5.0 / 28.0).epsilon(1e-10));
    CHECK(dr.ergodic);
    REQUIRE(dr.alpha.size() == 2u);
    CHECK(dr.alpha[0] == doctest::Approx(4.0 / 7.0).epsilon(1e-10));
    CHECK(dr.alpha[1] == doctest::Approx(3.0 / 7.0).epsilon(1e-10));

    dr = drift(load_model_file(fixture("mg1_m3_d4.json")));
    CHECK(dr.varrho == doctest::Approx(-0.125).epsilon(1e-10));
    CHECK(dr.ergodic);
    for (double a : dr.alpha) CHECK(a == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

    dr = drift(load_model_file(fixture("mg1_m4_d8.json")));
    CHECK(dr.varrho == doctest::Approx(-0.234375).epsilon(1e-10));
    CHECK(dr.ergodic);
    for (double a : dr.alpha) CHECK(a == doctest::Approx(0.25).epsilon(1e-10));

    dr = drift(load_model_file(fixture("nonergodic.json")));
    CHECK(dr.varrho == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_FALSE(dr.ergodic);
}

TEST_CASE("drift rejects a reducible phase process") {
    const Mat d4 = 0.4 * Mat::identity(2);
    const Mat d2 = 0.2 * Mat::identity(2);
    const Mat d8 = 0.8 * Mat::identity(2);
    const MG1Model diag = make_qbd(d4, d4, d2, d8);
    bool threw = false;
    try {
        drift(diag);
    } catch (const SolverError& e) {
        threw = true;
        CHECK(e.code() == Errc::precondition_violation);
    }
    CHECK(threw);
}

TEST_CASE("star matrices of the scalar fixture") {
    // G = 1:  A*_0 = A_0 + A_1 = 0.4, A*_1 = A_1 = 0.3,
    //         B*_0 = B_0 + B_1 = 1.0, B*_1 = B_1 = 0.3.
    const MG1Model s1 = load_model_file(fixture("s1.json"));
    auto [astar, bstar] = star_matrices(s1, Mat::identity(1));
    CHECK(astar.start == 0);
    CHECK(bstar.start == 0);
    CHECK(astar.get(0)(0, 0) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(astar.get(1)(0, 0) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(bstar.get(0)(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bstar.get(1)(0, 0) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("group inverse") {
    // S = 0.5 [[1, -1], [-1, 1]] with alpha = (1/2, 1/2):
    // S + 1 alpha = [[1, 0], [0, 1]], so X = I - 1 alpha = S.
    const Mat s = from_rows({{0.5, -0.5}, {-0.5, 0.5}});
    const std::vector<double> alpha = {0.5, 0.5};
    const Mat x = group_inverse(s, alpha);
    CHECK(entry_diff(x, s) < 1e-14);

    // The four defining identities on a generic singular I - sum(A).
    const MG1Model m2 = load_model_file(fixture("qbd_m2.json"));
    const DriftReport dr = drift(m2);
    const Mat s2 = Mat::identity(2) - m2.a.sum();
    const Mat x2 = group_inverse(s2, dr.alpha);
    CHECK(entry_diff(s2 * x2 * s2, s2) < 1e-13);
    CHECK(entry_diff(x2 * s2 * x2, x2) < 1e-13);
    for (int i = 0; i < 2; ++i) {
        double row = 0.0, proj = 0.0;
        for (int j = 0; j < 2; ++j) {
            row += x2(i, j);
            proj += dr.alpha[j] * x2(j, i);
        }
        CHECK(std::fabs(row) < 1e-13);   // X 1 = 0
        CHECK(std::fabs(proj) < 1e-13);  // alpha X = 0
    }
}

TEST_CASE("boundary level of the scalar fixture") {
    // v = 1, and t = 0.3 / (0.3 + 0.3) = 1/2.
    const MG1Model s1 = load_model_file(fixture("s1.json"));
    const DriftReport dr = drift(s1);
    const std::vector<double> pi0 = boundary_pi0(s1, Mat::identity(1), dr);
    REQUIRE(pi0.size() == 1u);
    CHECK(pi0[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("degenerate boundary eigenvalue is reported") {
    // B = (I): level zero is absorbing for the boundary row, so
    // B*_0 = I and its unit eigenvalue is not simple.
    std::vector<Mat> a = {from_rows({{0.3, 0.1}, {0.1, 0.3}}), from_rows({{0.2, 0.2}, {0.2, 0.2}}),
                          from_rows({{0.1, 0.1}, {0.1, 0.1}})};
    std::vector<Mat> b = {Mat::identity(2)};
    const MG1Model trap = make_mg1(std::move(a), std::move(b));
    const DriftReport dr = drift(trap);
    REQUIRE(dr.ergodic);
    auto [res, diag] = cr_solve_gmin(trap, 1e-10, 64);
    bool threw = false;
    try {
        boundary_pi0(trap, res.g, dr);
    } catch (const SolverError& e) {
        threw = true;
        CHECK(e.code() == Errc::degenerate_boundary);
    }
    CHECK(threw);
}

TEST_CASE("scalar fixture: geometric stationary distribution and metrics") {
    const MG1Model s1 = load_model_file(fixture("s1.json"));
    const DriftReport dr = drift(s1);
    auto [res, diag] = cr_solve_gmin(s1, 1e-10, 64);
    const std::vector<double> pi0 = boundary_pi0(s1, res.g, dr);
    const StationaryResult st = stationary_levels(s1, res.g, pi0, 1e-12, 1000);

    CHECK_FALSE(st.truncated);
    CHECK(st.levels == static_cast<int>(st.pi.size()));
    CHECK(st.residual < 1e-10);
    double total = 0.0;
    for (const auto& level : st.pi)
        for (double v : level) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    // pi_i = (1/2)^{i+1}.
    for (int i = 0; i < 10; ++i) CHECK(st.pi[i][0] == doctest::Approx(std::pow(0.5, i + 1)).epsilon(1e-9));

    const QueueMetrics qm = queue_metrics(st, s1.nu);
    CHECK(qm.mean_queue == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(qm.mean_sojourn.has_value());
    CHECK(*qm.mean_sojourn == doctest::Approx(10.0 / 3.0).epsilon(1e-9));
    REQUIRE(qm.tail_probs.size() >= 2u);
    CHECK(qm.tail_probs[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(qm.tail_probs[1] == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(qm.mean_queue_tail_est < 1e-8);

    const QueueMetrics no_nu = queue_metrics(st, std::nullopt);
    CHECK_FALSE(no_nu.mean_sojourn.has_value());
}

TEST_CASE("k_max truncation renormalizes and reports the lost mass") {
    const MG1Model s1 = load_model_file(fixture("s1.json"));
    const DriftReport dr = drift(s1);
    auto [res, diag] = cr_solve_gmin(s1, 1e-10, 64);
    const std::vector<double> pi0 = boundary_pi0(s1, res.g, dr);
    const StationaryResult st = stationary_levels(s1, res.g, pi0, 1e-12, 3);

    CHECK(st.truncated);
    REQUIRE(st.pi.size() == 4u);
    // Raw masses 1/2 .. 1/16 leave 1/16 unassigned; renormalized head
    // 8/15.
    CHECK(st.tail_mass_bound == doctest::Approx(0.0625).epsilon(1e-8));
    CHECK(st.pi[0][0] == doctest::Approx(8.0 / 15.0).epsilon(1e-9));
    double total = 0.0;
    for (const auto& level : st.pi)
        for (double v : level) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("agreement with the dense truncated-chain oracle") {
    for (int seed : {3, 5, 8, 10, 12, 16, 19, 20}) {
        std::mt19937_64 rng(seed);
        const int m = 1 + static_cast<int>(rng() % 3);
        const int ab = 2 + static_cast<int>(rng() % 5);
        const int bb = 1 + static_cast<int>(rng() % 3);
        const MG1Model mdl = oracle::random_ergodic_model(rng, m, ab, bb);

        const DriftReport dr = drift(mdl);
        auto [res, diag] = cr_solve_gmin(mdl, 1e-11, 64);
        const std::vector<double> pi0 = boundary_pi0(mdl, res.g, dr);
        const auto oracle_pi = oracle::dense_truncated_stationary(mdl, 200);
        for (int r = 0; r < m; ++r) CHECK(std::fabs(pi0[r] - oracle_pi[0][r]) < 1e-6);

        const StationaryResult st = stationary_levels(mdl, res.g, pi0, 1e-13, 1000);
        const int span = std::min<int>(12, st.levels);
        for (int k = 0; k < span; ++k)
            for (int r = 0; r < m; ++r) CHECK(std::fabs(st.pi[k][r] - oracle_pi[k][r]) < 1e-6);
    }
}

TEST_CASE("stationary_levels validates its arguments") {
    const MG1Model s1 = load_model_file(fixture("s1.json"));
    const std::vector<double> pi0 = {0.5};
    CHECK_THROWS_AS(stationary_levels(s1, Mat::identity(1), pi0, -1.0, 100), SolverError);
    CHECK_THROWS_AS(stationary_levels(s1, Mat::identity(1), pi0, 1e-12, 0), SolverError);
}

}  // TEST_SUITE
