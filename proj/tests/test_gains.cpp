#include <doctest.h>

#include <cmath>
#include <random>

#include "detc/ccs.hpp"
#include "detc/errors.hpp"
#include "detc/gains.hpp"
#include "support/alpha_oracle.hpp"

using namespace detc;
using detc::testing::AlphaOracle;
using detc::testing::random_design;

TEST_CASE("sec5 gain constants are exact") {
    const Scenario s = builtin_sec5_scenario();
    const GainTable table = compute_gain_table(s.config, s.plant.orders);
    CHECK(table.sub[0].K[0] == 1.5);
    CHECK(table.sub[0].K[1] == 3.55);
    CHECK(table.sub[1].K[0] == 2.8);
    CHECK(table.sub[1].K[1] == 10.34);
    CHECK(table.sub[0].xi[0][0] == -1.5);
    CHECK(table.sub[1].xi[0][0] == -2.8);
}

TEST_CASE("K exceeds c and xi_{1,1} = -K_1") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const std::vector<int> orders{4, 3};
        const ScenarioConfig cfg = random_design(orders, seed);
        const GainTable table = compute_gain_table(cfg, orders);
        for (std::size_t i = 0; i < orders.size(); ++i) {
            for (int k = 1; k <= orders[i]; ++k)
                CHECK(table.sub[i].K[static_cast<std::size_t>(k - 1)] >
                      cfg.c[i][static_cast<std::size_t>(k - 1)]);
            CHECK(table.sub[i].xi[0][0] == -table.sub[i].K[0]);
        }
    }
}

TEST_CASE("third-order coefficient recursion") {
    // sec5 subsystem 1 extended to order 3 with the same design parameters.
    const Scenario s = builtin_sec5_scenario();
    ScenarioConfig cfg = s.config;
    cfg.c[0] = {0.5, 0.3, 1.0};
    for (auto& row : cfg.varpi1[0]) row = {1.0, 1.0, 1.0};
    for (auto& row : cfg.varpi2[0]) row = {1.0, 1.0, 1.0};
    const std::vector<int> orders{3, 2};
    const GainTable table = compute_gain_table(cfg, orders);
    CHECK(table.sub[0].xi[1][0] == doctest::Approx(-6.325).epsilon(1e-12));
    CHECK(table.sub[0].xi[1][1] == doctest::Approx(-5.05).epsilon(1e-12));
}

TEST_CASE("finite-difference oracle matches the coefficient recursion") {
    struct Case {
        std::vector<int> orders;
        std::uint64_t seed;
    };
    for (const Case& tc : {Case{{2, 2}, 0}, Case{{3, 2}, 11ull}, Case{{5, 3}, 12ull},
                           Case{{6, 4}, 13ull}}) {
        const ScenarioConfig cfg =
            tc.seed == 0 ? builtin_sec5_scenario().config : random_design(tc.orders, tc.seed);
        const GainTable table = compute_gain_table(cfg, tc.orders);
        for (std::size_t i = 0; i < tc.orders.size(); ++i) {
            const AlphaOracle oracle(cfg, static_cast<int>(i), tc.orders[i]);
            for (int k = 1; k <= tc.orders[i] - 1; ++k)
                for (int l = 1; l <= k; ++l) {
                    const double expected = oracle.xi(k, l);
                    const double actual = table.sub[i].xi_coeff(k, l);
                    CHECK(actual == doctest::Approx(expected).epsilon(1e-9));
                }
        }
    }
}

TEST_CASE("sec5 transform matrices and lemma1 constants") {
    const Scenario s = builtin_sec5_scenario();
    const GainTable table = compute_gain_table(s.config, s.plant.orders);

    CHECK(table.sub[0].T(0, 0) == 1.0);
    CHECK(table.sub[0].T(0, 1) == 0.0);
    CHECK(table.sub[0].T(1, 0) == -1.5);
    CHECK(table.sub[0].T(1, 1) == 1.0);
    CHECK(lemma1_constant(table, 0) == doctest::Approx(std::sqrt(4.25)).epsilon(1e-12));

    CHECK(table.sub[1].T(1, 0) == -2.8);
    CHECK(lemma1_constant(table, 1) == doctest::Approx(std::sqrt(9.84)).epsilon(1e-12));

    CHECK_THROWS_AS(lemma1_constant(table, 5), ContractError);
}

TEST_CASE("first-order subsystem has unit transform") {
    ScenarioConfig cfg = random_design({1}, 21);
    const GainTable table = compute_gain_table(cfg, {1});
    CHECK(table.sub[0].T(0, 0) == 1.0);
    CHECK(lemma1_constant(table, 0) == 1.0);
}

TEST_CASE("transform consistency: A x = B z and x = T z at the benchmark scale") {
    const Scenario s = builtin_sec5_scenario();
    const GainTable table = compute_gain_table(s.config, s.plant.orders);
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    for (int i = 0; i < 2; ++i) {
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<double> x{unit(rng), unit(rng)};
            const auto z = transform_z(table, i, x);
            const Eigen::Map<const Eigen::VectorXd> xv(x.data(), 2);
            const Eigen::Map<const Eigen::VectorXd> zv(z.data(), 2);
            const auto& g = table.sub[static_cast<std::size_t>(i)];
            CHECK((g.A * xv - g.B * zv).cwiseAbs().maxCoeff() <= 1e-12);
            CHECK((xv - g.T * zv).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("transform consistency holds at high order up to rounding scale") {
    // The coefficients compound geometrically with the order, so the
    // residual is measured relative to the magnitudes involved.
    const std::vector<int> orders{6, 3};
    const ScenarioConfig cfg = random_design(orders, 31);
    const GainTable table = compute_gain_table(cfg, orders);
    std::mt19937_64 rng(78);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    for (std::size_t i = 0; i < orders.size(); ++i) {
        const int n = orders[i];
        const auto& g = table.sub[i];
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> x(static_cast<std::size_t>(n));
            for (auto& v : x) v = unit(rng);
            const auto z = transform_z(table, static_cast<int>(i), x);
            const Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
            const Eigen::Map<const Eigen::VectorXd> zv(z.data(), n);
            const double scale =
                1.0 + std::max((g.A * xv).cwiseAbs().maxCoeff(), (g.B * zv).cwiseAbs().maxCoeff());
            CHECK((g.A * xv - g.B * zv).cwiseAbs().maxCoeff() <= 1e-12 * scale);
            const double xscale = 1.0 + (g.T * zv).cwiseAbs().maxCoeff();
            CHECK((xv - g.T * zv).cwiseAbs().maxCoeff() <= 1e-12 * xscale);
        }
    }
}

TEST_CASE("lemma1 norm bound holds strictly for random vectors") {
    const std::vector<int> orders{4, 2};
    const ScenarioConfig cfg = random_design(orders, 41);
    const GainTable table = compute_gain_table(cfg, orders);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (std::size_t i = 0; i < orders.size(); ++i) {
        const int n = orders[i];
        Eigen::VectorXd z(n);
        for (int trial = 0; trial < 1000; ++trial) {
            for (int c = 0; c < n; ++c) z(c) = unit(rng);
            CHECK((table.sub[i].T * z).norm() <= table.sub[i].lemma1_constant * z.norm());
        }
    }
}

TEST_CASE("lemma2 bounds: sec5 hand values") {
    const Scenario s = builtin_sec5_scenario();
    const GainTable table = compute_gain_table(s.config, s.plant.orders);
    const Lemma2Bounds b = lemma2_bounds(table, s.config.thresholds);
    CHECK(b.dz[0][0] == 0.001);
    CHECK(b.dalpha[0][0] == doctest::Approx(0.0015).epsilon(1e-15));
    CHECK(b.dz[0][1] == doctest::Approx(0.0035).epsilon(1e-15));
    CHECK(b.dalpha[0][1] == doctest::Approx(0.016425).epsilon(1e-12));
    CHECK(b.dz[1][0] == 0.002);
    CHECK(b.dalpha[1][0] == doctest::Approx(0.0056).epsilon(1e-12));
}

TEST_CASE("lemma2 bounds scale linearly with the thresholds") {
    const std::vector<int> orders{5, 2};
    const ScenarioConfig base = random_design(orders, 51);
    const GainTable table = compute_gain_table(base, orders);
    TriggerThresholds th;
    th.dx = {{0.01, 0.02, 0.005, 0.004, 0.003}, {0.001, 0.002}};
    th.du = {0.1, 0.2};
    const Lemma2Bounds b1 = lemma2_bounds(table, th);

    // Power-of-two scaling commutes with every floating-point operation;
    // the tiny factor doubles as the thresholds-to-zero limit.
    for (double lambda : {2.0, 0.5, 4.0, 0x1p-40}) {
        const Lemma2Bounds bs = lemma2_bounds(table, th.scaled(lambda));
        for (std::size_t i = 0; i < orders.size(); ++i)
            for (std::size_t k = 0; k < b1.dz[i].size(); ++k) {
                CHECK(bs.dz[i][k] == lambda * b1.dz[i][k]);
                CHECK(bs.dalpha[i][k] == lambda * b1.dalpha[i][k]);
            }
    }
    for (double lambda : {3.0, 0.7}) {
        const Lemma2Bounds bs = lemma2_bounds(table, th.scaled(lambda));
        for (std::size_t i = 0; i < orders.size(); ++i)
            for (std::size_t k = 0; k < b1.dz[i].size(); ++k) {
                CHECK(bs.dz[i][k] ==
                      doctest::Approx(lambda * b1.dz[i][k]).epsilon(1e-13));
                CHECK(bs.dalpha[i][k] ==
                      doctest::Approx(lambda * b1.dalpha[i][k]).epsilon(1e-13));
            }
    }
}

TEST_CASE("lemma2 bounds: printed expanded form agrees with the collapsed form") {
    const std::vector<int> orders{5};
    const ScenarioConfig cfg = random_design(orders, 61);
    const GainTable table = compute_gain_table(cfg, orders);
    TriggerThresholds th;
    th.dx = {{0.01, 0.02, 0.005, 0.004, 0.003}};
    th.du = {0.1};
    const Lemma2Bounds b = lemma2_bounds(table, th);

    const SubsystemGains& g = table.sub[0];
    // Expanded coefficient: c + reciprocal sums with the xi^2 weights spelled
    // out, instead of the aggregate K.
    for (int k = 2; k <= orders[0]; ++k) {
        double recip = 0.0;
        for (std::size_t j = 0; j < cfg.varpi1[0].size(); ++j)
            recip += 1.0 / (4.0 * cfg.varpi1[0][j][static_cast<std::size_t>(k - 1)]) +
                     1.0 / (4.0 * cfg.varpi2[0][j][static_cast<std::size_t>(k - 1)]);
        double expanded = cfg.c[0][static_cast<std::size_t>(k - 1)] * b.dz[0][static_cast<std::size_t>(k - 1)];
        for (int l = 1; l <= k - 1; ++l)
            expanded += std::abs(g.xi_coeff(k - 1, l)) * th.dx[0][static_cast<std::size_t>(l)];
        expanded += b.dz[0][static_cast<std::size_t>(k - 2)];
        double weight = recip;
        for (int l = 1; l <= k - 1; ++l)
            weight += recip * g.xi_coeff(k - 1, l) * g.xi_coeff(k - 1, l);
        expanded += b.dz[0][static_cast<std::size_t>(k - 1)] * weight;
        CHECK(b.dalpha[0][static_cast<std::size_t>(k - 1)] ==
              doctest::Approx(expanded).epsilon(1e-13));
    }
}

TEST_CASE("gain table rejects nonpositive parameters") {
    Scenario s = builtin_sec5_scenario();
    ScenarioConfig bad = s.config;
    bad.c[1][0] = -1.0;
    CHECK_THROWS_AS(compute_gain_table(bad, s.plant.orders), SpecError);
    bad = s.config;
    bad.varpi2[0][1][1] = 0.0;
    CHECK_THROWS_AS(compute_gain_table(bad, s.plant.orders), SpecError);
}
