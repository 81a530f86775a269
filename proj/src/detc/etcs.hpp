#pragma once

#include <span>
#include <vector>

#include "detc/ccs.hpp"
#include "detc/gains.hpp"
#include "detc/scenario.hpp"
#include "detc/types.hpp"

namespace detc {

/// Zero-order-hold bookkeeping for the triggered scheme: the last broadcast
/// value of each state channel (x̄_{i,k}) and of each input (u_i), plus the
/// per-channel event logs. Held values change only when a triggering
/// condition fires, and then jump exactly to the triggering-side signal.
class HeldSignals {
public:
    HeldSignals() = default;
    explicit HeldSignals(std::vector<int> orders);

    /// Commits the t = 0 broadcast: x̄(0) = x(0), u(0) = v(0), and logs one
    /// initialization event per channel.
    void initialize(std::span<const double> x0, std::span<const double> v0);

    /// State-channel triggering at time t: any channel with
    /// |x_{i,k}(t) - x̄_{i,k}| > Δx_{i,k} (strict) rebroadcasts. Channels
    /// are independent; simultaneous events are all committed. Throws
    /// ContractError unless t is strictly beyond the last state poll.
    std::vector<Event> poll_states(const TriggerThresholds& thresholds,
                                   std::span<const double> x_all, double t);

    /// Input-channel triggering at time t against freshly computed v. The
    /// caller evaluates v from the *current* held states (i.e. after
    /// poll_states), matching the right-continuous broadcast semantics.
    std::vector<Event> poll_inputs(const TriggerThresholds& thresholds,
                                   std::span<const double> v_all, double t);

    std::span<const double> xbar() const { return xbar_; }
    std::span<const double> u() const { return u_; }
    std::span<const double> xbar_subsystem(int i) const;

    /// Ordered event times per flattened state channel / per input channel.
    const std::vector<std::vector<double>>& state_event_times() const { return state_events_; }
    const std::vector<std::vector<double>>& input_event_times() const { return input_events_; }

    const std::vector<int>& orders() const { return orders_; }
    bool initialized() const { return initialized_; }

private:
    std::vector<int> orders_;
    std::vector<int> offsets_;
    std::vector<double> xbar_;
    std::vector<double> u_;
    std::vector<std::vector<double>> state_events_;
    std::vector<std::vector<double>> input_events_;
    double last_state_poll_ = 0.0;
    double last_input_poll_ = 0.0;
    bool initialized_ = false;
};

/// One ETM evaluation: state channels first, then input channels against the
/// provided v. Returns all events committed at time t.
std::vector<Event> etm_step(const TriggerThresholds& thresholds, HeldSignals& held,
                            std::span<const double> x_all, std::span<const double> v_all,
                            double t);

/// Triggered transform: error coordinates of the held state.
std::vector<double> transform_z_triggered(const GainTable& table, int i,
                                          std::span<const double> xbar_i);

/// Pre-trigger control signal v_i = ᾱ_{i,n_i}(x̄_i) - φ_i(x̄_i)ᵀθ̂_i - ψ_i(x̄_i).
/// Identical to control_u evaluated at the held state: the triggered
/// controllers are the continuous ones with x replaced by x̄.
double control_v(const GainTable& table, const PlantSpec& spec, int i,
                 std::span<const double> xbar_i, std::span<const double> theta_hat_i);

/// Triggered estimate update rate: Γ_i(-σ_i θ̂_i + φ_i(x̄_i) z̄_{i,n_i}).
std::vector<double> adapt_rate_triggered(const PlantSpec& spec, const ScenarioConfig& cfg, int i,
                                         std::span<const double> xbar_i,
                                         std::span<const double> theta_hat_i, double zbar_top);

}  // namespace detc
