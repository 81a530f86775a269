#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "detc/etcs.hpp"
#include "detc/gains.hpp"
#include "detc/scenario.hpp"
#include "detc/types.hpp"

namespace detc {

/// Everything recorded by one closed-loop run. Row r holds the signals at
/// grid time t[r] = r·dt; the input row is the value applied over
/// [t[r], t[r+1]). For the triggered scheme, rows reflect the held signals
/// *after* the ETM evaluation at that boundary. If the divergence guard
/// tripped, `truncated` is set and the grid ends at the failing step.
struct SimResult {
    ControllerKind kind = ControllerKind::Ccs;
    int subsystem_count = 0;
    std::vector<int> orders;
    std::vector<int> regressor_dims;
    double dt = 0.0;

    std::vector<double> time;
    std::vector<std::vector<double>> x;          ///< [row][flat state]
    std::vector<std::vector<double>> u;          ///< [row][i]
    std::vector<std::vector<double>> v;          ///< [row][i], Etcs only
    std::vector<std::vector<double>> xbar;       ///< [row][flat state], Etcs only
    std::vector<std::vector<double>> theta_hat;  ///< [row][flat estimate]
    HeldSignals held;                            ///< final hold state + event logs

    /// Sampled-trigger slack: max over all derivative evaluations of
    /// |ẋ_{i,k}| times dt. Bounds how far a signal can move past its
    /// threshold between two boundary checks.
    double kappa = 0.0;
    bool truncated = false;
    std::size_t truncated_step = 0;
    /// Hash of the producing configuration (canonical JSON form).
    std::uint64_t config_fingerprint = 0;

    int state_offset(int i) const;
    int theta_offset(int i) const;
    std::span<const double> subsystem_state(std::size_t row, int i) const;
    std::span<const double> subsystem_xbar(std::size_t row, int i) const;
};

/// Fixed-step closed-loop integration of plant + estimator with the chosen
/// controller. Classical 4th-order Runge-Kutta over the joint state
/// (plant states and θ̂ together). The continuous scheme evaluates its
/// control law at every stage; the triggered scheme applies the held input,
/// which is constant within a step by construction, and evaluates the
/// triggering conditions once per step boundary after the state update.
/// Aborts (flagging the result truncated) when any |x| exceeds 1e6.
SimResult run(const PlantSpec& spec, const ScenarioConfig& cfg, ControllerKind kind);

/// Per-channel triggering statistics. Counts exclude the t = 0
/// initialization events; gaps are over consecutive logged events.
struct ChannelStats {
    bool input = false;
    int i = 0;  ///< one-based
    int k = 0;  ///< one-based, 0 for input channels
    int count = 0;
    std::optional<double> min_gap;
    std::optional<double> mean_gap;
};

/// Throws ContractError when called on a continuous-scheme result.
std::vector<ChannelStats> inter_event_stats(const SimResult& result);

}  // namespace detc
