#include <doctest.h>

#include <cmath>
#include <sstream>

#include "detc/analysis.hpp"
#include "detc/config.hpp"
#include "detc/csv.hpp"
#include "detc/errors.hpp"
#include "detc/sim.hpp"

using namespace detc;

namespace {

struct Sec5Runs {
    Scenario scenario = builtin_sec5_scenario();
    GainTable table = compute_gain_table(scenario.config, scenario.plant.orders);
    Lemma2Bounds bounds = lemma2_bounds(table, scenario.config.thresholds);
    SimResult etcs = run(scenario.plant, scenario.config, ControllerKind::Etcs);
};

const Sec5Runs& sec5_runs() {
    static Sec5Runs runs;
    return runs;
}

}  // namespace

TEST_CASE("lemma2 check passes on the benchmark run at two step sizes") {
    const auto& f = sec5_runs();
    const VerificationReport report = check_lemma2(f.etcs, f.bounds, f.table);
    CHECK(report.pass());
    CHECK(report.fingerprint == f.etcs.config_fingerprint);
    CHECK(report.checks.size() == 8);  // z and alpha per (i,k)

    Scenario fine = f.scenario;
    fine.config.dt = 5e-4;
    const SimResult r2 = run(fine.plant, fine.config, ControllerKind::Etcs);
    const VerificationReport report2 = check_lemma2(r2, f.bounds, f.table);
    CHECK(report2.pass());
}

TEST_CASE("lemma2 check with 10x thresholds passes with larger margin") {
    const auto& f = sec5_runs();
    const VerificationReport base = check_lemma2(f.etcs, f.bounds, f.table);
    const Lemma2Bounds wide = lemma2_bounds(f.table, f.scenario.config.thresholds.scaled(10.0));
    const VerificationReport report = check_lemma2(f.etcs, wide, f.table);
    CHECK(report.pass());
    for (std::size_t c = 0; c < report.checks.size(); ++c)
        CHECK(report.checks[c].bound - report.checks[c].measured >=
              base.checks[c].bound - base.checks[c].measured);
}

TEST_CASE("lemma2 check flags corrupted held values with location") {
    // Zero plant: kappa = 0, so a 2*dx corruption must exceed the bound.
    const Scenario z = builtin_scenario("zero");
    const GainTable table = compute_gain_table(z.config, z.plant.orders);
    const Lemma2Bounds bounds = lemma2_bounds(table, z.config.thresholds);
    SimResult r = run(z.plant, z.config, ControllerKind::Etcs);
    const double dx11 = z.config.thresholds.dx[0][0];
    for (std::size_t row = 1000; row < 2000; ++row) r.xbar[row][0] += 2.0 * dx11;

    const VerificationReport report = check_lemma2(r, bounds, table);
    CHECK_FALSE(report.pass());
    bool found = false;
    for (const auto& c : report.checks) {
        if (c.name == "z_1_1") {
            found = true;
            CHECK_FALSE(c.pass);
            CHECK(c.measured == doctest::Approx(2.0 * dx11).epsilon(1e-12));
            CHECK(c.worst_t >= 1.0);
            CHECK(c.worst_t < 2.0);
        }
    }
    CHECK(found);
}

TEST_CASE("lemma2 check rejects continuous results") {
    const auto& f = sec5_runs();
    const SimResult ccs = run(f.scenario.plant, f.scenario.config, ControllerKind::Ccs);
    CHECK_THROWS_AS(check_lemma2(ccs, f.bounds, f.table), ContractError);
}

TEST_CASE("residual set") {
    const Scenario z = builtin_scenario("zero");
    const SimResult r = run(z.plant, z.config, ControllerKind::Ccs);
    const auto tail = residual_set(r, 20.0);
    CHECK(tail == std::vector<double>{0.0, 0.0});
    CHECK_THROWS_AS(residual_set(r, 30.0), ContractError);
}

TEST_CASE("compare_runs: identical runs have zero distance") {
    const auto& f = sec5_runs();
    for (const auto& d : compare_runs(f.etcs, f.etcs)) CHECK(d.distance == 0.0);
}

TEST_CASE("compare_runs: grid mismatch is a contract error") {
    const auto& f = sec5_runs();
    Scenario other = f.scenario;
    other.config.horizon = 10.0;
    const SimResult shorter = run(other.plant, other.config, ControllerKind::Ccs);
    CHECK_THROWS_AS(compare_runs(f.etcs, shorter), ContractError);
}

TEST_CASE("decimate halves the grid for refinement comparisons") {
    Scenario s = builtin_scenario("zero");
    s.config.horizon = 1.0;
    const SimResult coarse = run(s.plant, s.config, ControllerKind::Ccs);
    Scenario fine = s;
    fine.config.dt = 5e-4;
    const SimResult dense = run(fine.plant, fine.config, ControllerKind::Ccs);
    const SimResult resampled = decimate(dense, 2);
    REQUIRE(resampled.time.size() == coarse.time.size());
    for (std::size_t r = 0; r < coarse.time.size(); ++r)
        CHECK(resampled.time[r] == coarse.time[r]);
    CHECK(max_state_distance(coarse, resampled) == 0.0);
}

TEST_CASE("gain table report contains the benchmark constants") {
    const auto& f = sec5_runs();
    const std::string csv = gain_table_report(f.table, f.bounds);
    CHECK(csv.find("i,k,l,xi,K,dz,dalpha\n") == 0);
    CHECK(csv.find("1,1,1,-1.5,1.5,0.001,0.0015") != std::string::npos);
    CHECK(csv.find("1,2,0,,3.55,0.0035,0.016425") != std::string::npos);
    CHECK(csv.find("2,1,1,-2.8,2.8,0.002,0.0056") != std::string::npos);

    const std::string lemma1 = lemma1_report(f.table);
    CHECK(lemma1.find("i,lemma1_constant\n") == 0);
    CHECK(lemma1.find("1,2.0615528128088303") != std::string::npos);
}

TEST_CASE("lemma1 randomized check passes and is reproducible") {
    const auto& f = sec5_runs();
    VerificationReport a = check_lemma1(f.table, 1000, 42);
    VerificationReport b = check_lemma1(f.table, 1000, 42);
    CHECK(a.pass());
    CHECK(a.to_csv() == b.to_csv());
}

TEST_CASE("zeno check passes on the benchmark run") {
    const auto& f = sec5_runs();
    const VerificationReport report = check_zeno(f.etcs);
    CHECK(report.pass());
    CHECK(report.checks.size() == 6);  // four state channels + two inputs
}

TEST_CASE("config fingerprint distinguishes configurations") {
    const Scenario a = builtin_sec5_scenario();
    Scenario b = builtin_sec5_scenario();
    CHECK(config_fingerprint(a.config) == config_fingerprint(b.config));
    b.config.dt = 5e-4;
    CHECK(config_fingerprint(a.config) != config_fingerprint(b.config));
}

TEST_CASE("trajectory csv round-trips through the reader") {
    Scenario s = builtin_sec5_scenario();
    s.config.horizon = 0.05;
    const SimResult r = run(s.plant, s.config, ControllerKind::Etcs);
    const std::string csv = trajectory_csv(r);
    std::istringstream in(csv);
    const TrajectoryTable table = read_trajectory_csv(in);
    REQUIRE(table.rows.size() == r.time.size());
    CHECK(table.columns[0] == "t");
    CHECK(table.columns[1] == "x_1_1");
    // Round-trip formatting restores the exact values.
    for (std::size_t row = 0; row < r.time.size(); ++row) {
        CHECK(table.rows[row][0] == r.time[row]);
        CHECK(table.rows[row][1] == r.x[row][0]);
    }
    const auto self = compare_trajectory_tables(table.columns, table.rows, table.columns,
                                                table.rows);
    for (const auto& d : self) CHECK(d.distance == 0.0);
}

TEST_CASE("events csv lists initialization and triggered events") {
    Scenario s = builtin_sec5_scenario();
    s.config.horizon = 0.2;
    const SimResult r = run(s.plant, s.config, ControllerKind::Etcs);
    const std::string csv = events_csv(r);
    CHECK(csv.find("channel_id,kind,i,k,event_time\n") == 0);
    CHECK(csv.find("0,state,1,1,0\n") != std::string::npos);
    CHECK(csv.find("4,input,1,0,0\n") != std::string::npos);

    const std::string stats = inter_event_stats_csv(inter_event_stats(r));
    CHECK(stats.find("channel_id,kind,i,k,count,min_gap,mean_gap\n") == 0);
}

TEST_CASE("reports serialize deterministically") {
    const auto& f = sec5_runs();
    const VerificationReport a = check_lemma2(f.etcs, f.bounds, f.table);
    const VerificationReport b = check_lemma2(f.etcs, f.bounds, f.table);
    CHECK(a.to_csv() == b.to_csv());
    CHECK(a.to_csv().find("check,status,measured,bound,slack,worst_t,fingerprint\n") == 0);
}
