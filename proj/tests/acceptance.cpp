// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is self-contained and timed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "detc/analysis.hpp"
#include "detc/ccs.hpp"
#include "detc/csv.hpp"
#include "detc/etcs.hpp"
#include "detc/gains.hpp"
#include "detc/scenario.hpp"
#include "detc/sim.hpp"
#include "support/alpha_oracle.hpp"

using namespace detc;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            pass = false;
            detail << " VIOLATION[" << what << "]";
        }
    }
};

double run_seconds(const std::function<void(Outcome&)>& body, Outcome& out) {
    const auto start = std::chrono::steady_clock::now();
    body(out);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

SimResult run_sec5(ControllerKind kind, double threshold_scale = 1.0, bool set2 = false,
                   double dt = 1e-3) {
    Scenario s = builtin_scenario(set2 ? "sec5_set2" : "sec5");
    s.config.dt = dt;
    if (threshold_scale != 1.0)
        s.config.thresholds = s.config.thresholds.scaled(threshold_scale);
    return run(s.plant, s.config, kind);
}

void criterion1_gain_oracle(Outcome& out) {
    const Scenario s = builtin_sec5_scenario();
    const GainTable table = compute_gain_table(s.config, s.plant.orders);
    out.require(table.sub[0].K[0] == 1.5, "K_{1,1} == 1.5 exactly");
    out.require(table.sub[0].K[1] == 3.55, "K_{1,2} == 3.55 exactly");
    out.require(table.sub[1].K[0] == 2.8, "K_{2,1} == 2.8 exactly");

    double worst_rel = 0.0;
    for (int i = 0; i < 2; ++i) {
        const testing::AlphaOracle oracle(s.config, i, s.plant.orders[static_cast<std::size_t>(i)]);
        for (int k = 1; k <= s.plant.orders[static_cast<std::size_t>(i)] - 1; ++k)
            for (int l = 1; l <= k; ++l) {
                const double expected = oracle.xi(k, l);
                const double rel = std::abs(table.sub[static_cast<std::size_t>(i)].xi_coeff(k, l) -
                                            expected) /
                                   std::max(1.0, std::abs(expected));
                worst_rel = std::max(worst_rel, rel);
            }
    }
    out.require(worst_rel <= 1e-9, "finite-difference oracle within 1e-9 relative");
    out.detail << " max_rel_err=" << worst_rel;
}

void criterion2_lemma1(Outcome& out) {
    const Scenario s = builtin_sec5_scenario();
    const GainTable table = compute_gain_table(s.config, s.plant.orders);
    std::mt19937_64 rng(0xAC5E97ull);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    int norm_violations = 0;
    double worst_identity = 0.0;
    for (int i = 0; i < 2; ++i) {
        const auto& g = table.sub[static_cast<std::size_t>(i)];
        Eigen::VectorXd z(g.order);
        for (int trial = 0; trial < 1000; ++trial) {
            for (int c = 0; c < g.order; ++c) z(c) = unit(rng);
            if ((g.T * z).norm() > g.lemma1_constant * z.norm()) ++norm_violations;

            std::vector<double> x(static_cast<std::size_t>(g.order));
            for (auto& v : x) v = unit(rng);
            const auto zt = transform_z(table, i, x);
            const Eigen::Map<const Eigen::VectorXd> xv(x.data(), g.order);
            const Eigen::Map<const Eigen::VectorXd> zv(zt.data(), g.order);
            worst_identity =
                std::max(worst_identity, (g.A * xv - g.B * zv).cwiseAbs().maxCoeff());
        }
    }
    out.require(norm_violations == 0, "norm bound violated");
    out.require(worst_identity <= 1e-12, "A x = B z within 1e-12");
    out.detail << " norm_violations=" << norm_violations << " max_identity_resid=" << worst_identity;
}

void criterion3_lemma2(Outcome& out) {
    const Scenario s = builtin_sec5_scenario();
    const GainTable table = compute_gain_table(s.config, s.plant.orders);
    const Lemma2Bounds bounds = lemma2_bounds(table, s.config.thresholds);
    const SimResult r = run(s.plant, s.config, ControllerKind::Etcs);
    const VerificationReport report = check_lemma2(r, bounds, table);
    int violations = 0;
    double min_margin = 1e300;
    for (const auto& c : report.checks) {
        if (!c.pass) ++violations;
        min_margin = std::min(min_margin, c.bound - c.measured);
    }
    out.require(violations == 0, "lemma2 bound violated on the grid");
    out.detail << " violations=" << violations << " min_margin=" << min_margin
               << " kappa=" << r.kappa;
}

void criterion4_substitution(Outcome& out) {
    // Frozen broadcast: gigantic thresholds keep xbar at x(0) for good.
    Scenario frozen = builtin_sec5_scenario();
    frozen.config.thresholds = frozen.config.thresholds.scaled(1e12);
    const SimResult fr = run(frozen.plant, frozen.config, ControllerKind::Etcs);
    for (const auto& log : fr.held.state_event_times())
        out.require(log.size() == 1 && log[0] == 0.0, "frozen run rebroadcast a state");
    for (const auto& log : fr.held.input_event_times())
        out.require(log.size() == 1 && log[0] == 0.0, "frozen run rebroadcast an input");
    out.detail << " frozen_truncated=" << (fr.truncated ? 1 : 0);

    // Threshold refinement drives the triggered trajectory to the continuous one.
    const SimResult ccs = run_sec5(ControllerKind::Ccs);
    double previous = 0.0;
    bool first = true;
    out.detail << " distances=";
    for (double scale : {1.0, 0.5, 0.25, 0.125}) {
        const SimResult etcs = run_sec5(ControllerKind::Etcs, scale);
        const double d = max_state_distance(etcs, ccs);
        out.detail << d << (scale == 0.125 ? "" : ",");
        if (!first) out.require(d <= previous, "distance increased as thresholds shrank");
        previous = d;
        first = false;
    }

    // Pointwise identity of the two control laws.
    const Scenario s = builtin_sec5_scenario();
    const GainTable table = compute_gain_table(s.config, s.plant.orders);
    std::mt19937_64 rng(0x5B57ull);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    int mismatches = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const std::vector<double> x{unit(rng), unit(rng)};
        const std::vector<double> th{unit(rng)};
        const int i = trial % 2;
        if (control_v(table, s.plant, i, x, th) != control_u(table, s.plant, i, x, th))
            ++mismatches;
    }
    out.require(mismatches == 0, "control_v != control_u at a sampled point");
    out.detail << " pointwise_mismatches=" << mismatches;
}

void criterion5_qualitative(Outcome& out) {
    const SimResult ccs = run_sec5(ControllerKind::Ccs);
    const SimResult set1 = run_sec5(ControllerKind::Etcs);
    const SimResult set2 = run_sec5(ControllerKind::Etcs, 1.0, true);
    out.require(!ccs.truncated && !set1.truncated && !set2.truncated,
                "divergence guard tripped");

    auto overall_tail = [](const SimResult& r) {
        double radius = 0.0;
        for (double v : residual_set(r, 20.0)) radius = std::max(radius, v);
        return radius;
    };
    const double tail1 = overall_tail(set1);
    const double tail2 = overall_tail(set2);
    out.require(tail2 >= tail1, "larger thresholds did not degrade the residual radius");
    out.detail << " tail_set1=" << tail1 << " tail_set2=" << tail2;

    const auto stats1 = inter_event_stats(set1);
    const auto stats2 = inter_event_stats(set2);
    int total1 = 0, total2 = 0;
    for (std::size_t ch = 0; ch < stats1.size(); ++ch) {
        total1 += stats1[ch].count;
        total2 += stats2[ch].count;
        out.require(stats2[ch].count <= stats1[ch].count,
                    "channel event count grew with larger thresholds");
    }
    out.detail << " events_set1=" << total1 << " events_set2=" << total2;
}

void criterion6_zeno(Outcome& out) {
    for (bool set2 : {false, true}) {
        const SimResult r = run_sec5(ControllerKind::Etcs, 1.0, set2);
        for (const auto& s : inter_event_stats(r)) {
            if (s.min_gap) out.require(*s.min_gap >= r.dt, "inter-event gap below dt");
            out.require(s.count < static_cast<int>(r.time.size()), "event count not finite");
        }
        if (!set2) {
            out.detail << " set1_min_gaps=";
            const auto stats = inter_event_stats(r);
            for (std::size_t ch = 0; ch < stats.size(); ++ch)
                out.detail << (stats[ch].min_gap ? *stats[ch].min_gap : 0.0)
                           << (ch + 1 < stats.size() ? "," : "");
        }
    }
}

void criterion7_determinism(Outcome& out) {
    const SimResult a = run_sec5(ControllerKind::Ccs);
    const SimResult b = run_sec5(ControllerKind::Ccs);
    out.require(trajectory_csv(a) == trajectory_csv(b), "continuous run not byte-identical");
    const SimResult ea = run_sec5(ControllerKind::Etcs);
    const SimResult eb = run_sec5(ControllerKind::Etcs);
    out.require(trajectory_csv(ea) == trajectory_csv(eb), "triggered run not byte-identical");
    out.require(events_csv(ea) == events_csv(eb), "event log not byte-identical");

    const SimResult fine = run_sec5(ControllerKind::Ccs, 1.0, false, 5e-4);
    const double refinement = max_state_distance(a, decimate(fine, 2));
    out.require(refinement < 1e-4, "dt-refinement distance >= 1e-4");
    out.detail << " refinement_distance=" << refinement;
}

struct Criterion {
    int number;
    const char* label;
    std::function<void(Outcome&)> body;
    double time_limit;  // seconds; 0 = unlimited
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "gain-table oracle and exact aggregate gains", criterion1_gain_oracle, 1.0},
        {2, "transform norm bound and A x = B z identity", criterion2_lemma1, 1.0},
        {3, "triggering-error bounds along the benchmark run", criterion3_lemma2, 10.0},
        {4, "substitution identity and threshold refinement", criterion4_substitution, 0.0},
        {5, "benchmark reproduction: boundedness, residual radii, event counts",
         criterion5_qualitative, 30.0},
        {6, "Zeno exclusion statistics", criterion6_zeno, 0.0},
        {7, "determinism and step-refinement", criterion7_determinism, 0.0},
    };

    bool all_pass = true;
    for (const auto& criterion : criteria) {
        Outcome out;
        double elapsed = 0.0;
        try {
            elapsed = run_seconds(criterion.body, out);
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail << " EXCEPTION[" << e.what() << "]";
        }
        if (criterion.time_limit > 0.0 && elapsed > criterion.time_limit) {
            out.pass = false;
            out.detail << " OVER_TIME[" << elapsed << "s > " << criterion.time_limit << "s]";
        }
        all_pass = all_pass && out.pass;
        std::printf("[%s] criterion %d: %s (%.2fs)%s\n", out.pass ? "PASS" : "FAIL",
                    criterion.number, criterion.label, elapsed, out.detail.str().c_str());
    }
    std::printf("%s\n", all_pass ? "ACCEPTANCE: ALL CRITERIA PASS" : "ACCEPTANCE: FAILURES");
    return all_pass ? 0 : 1;
}
