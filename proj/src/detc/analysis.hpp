#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "detc/gains.hpp"
#include "detc/sim.hpp"

namespace detc {

struct CheckEntry {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
    double slack = 0.0;
    double worst_t = 0.0;  ///< grid time of the worst measurement
};

/// Outcome of one verification suite over a recorded run.
struct VerificationReport {
    std::vector<CheckEntry> checks;
    std::uint64_t fingerprint = 0;

    bool pass() const;
    /// CSV: check,status,measured,bound,slack,worst_t,fingerprint.
    std::string to_csv() const;
};

/// Checks the triggering-error bounds along a recorded triggered run: at
/// every grid point |z_{i,k} - z̄_{i,k}| <= Δz_{i,k} + κ and
/// |α_{i,k} - ᾱ_{i,k}| <= Δα_{i,k} + κ(1 + K_{i,k}), with κ the run's
/// sampled-trigger slack. Throws ContractError on a continuous-scheme result.
VerificationReport check_lemma2(const SimResult& result, const Lemma2Bounds& bounds,
                                const GainTable& table);

/// Tail sup of each subsystem output: max |x_{i,1}(t)| over t >= tail_start.
std::vector<double> residual_set(const SimResult& result, double tail_start);

struct SignalDistance {
    std::string signal;
    double distance = 0.0;
};

/// Componentwise sup-norm distance between two runs on identical grids
/// (states, inputs, estimates). Throws ContractError on grid mismatch.
std::vector<SignalDistance> compare_runs(const SimResult& a, const SimResult& b);

/// Largest state-signal distance from compare_runs.
double max_state_distance(const SimResult& a, const SimResult& b);

/// Every 'factor'-th grid point of a run (for step-refinement comparisons).
SimResult decimate(const SimResult& result, int factor);

/// Gain-table and triggering-bound constants as CSV
/// (columns i,k,l,xi,K,dz,dalpha; one row per ξ entry, plus one l=0 row for
/// the top step of each subsystem, which has no ξ row).
std::string gain_table_report(const GainTable& table, const Lemma2Bounds& bounds);

/// Transform-norm constants as CSV (columns i,lemma1_constant).
std::string lemma1_report(const GainTable& table);

/// Randomized check of the transform relations: for `samples` random
/// vectors per subsystem, ‖T_i z‖ <= ‖T_i‖_F ‖z‖ (zero violations) and
/// A_i x = B_i (M_i x) componentwise to 1e-12.
VerificationReport check_lemma1(const GainTable& table, int samples, std::uint64_t seed);

/// Zeno statistics check: finite per-channel counts and minimum inter-event
/// gap >= dt on a triggered run.
VerificationReport check_zeno(const SimResult& result);

std::vector<SignalDistance> compare_trajectory_tables(const std::vector<std::string>& cols_a,
                                                      const std::vector<std::vector<double>>& rows_a,
                                                      const std::vector<std::string>& cols_b,
                                                      const std::vector<std::vector<double>>& rows_b);

}  // namespace detc
