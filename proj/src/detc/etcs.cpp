#include "detc/etcs.hpp"

#include <cmath>

#include "detc/errors.hpp"

namespace detc {

HeldSignals::HeldSignals(std::vector<int> orders) : orders_(std::move(orders)) {
    offsets_.resize(orders_.size() + 1, 0);
    for (std::size_t i = 0; i < orders_.size(); ++i) offsets_[i + 1] = offsets_[i] + orders_[i];
    xbar_.assign(static_cast<std::size_t>(offsets_.back()), 0.0);
    u_.assign(orders_.size(), 0.0);
    state_events_.resize(xbar_.size());
    input_events_.resize(u_.size());
}

void HeldSignals::initialize(std::span<const double> x0, std::span<const double> v0) {
    if (initialized_) throw ContractError("HeldSignals: already initialized");
    if (x0.size() != xbar_.size() || v0.size() != u_.size())
        throw SpecError("HeldSignals: initialization vector size mismatch");
    for (std::size_t ch = 0; ch < xbar_.size(); ++ch) {
        xbar_[ch] = x0[ch];
        state_events_[ch].push_back(0.0);
    }
    for (std::size_t i = 0; i < u_.size(); ++i) {
        u_[i] = v0[i];
        input_events_[i].push_back(0.0);
    }
    last_state_poll_ = 0.0;
    last_input_poll_ = 0.0;
    initialized_ = true;
}

std::span<const double> HeldSignals::xbar_subsystem(int i) const {
    return std::span<const double>(xbar_).subspan(
        static_cast<std::size_t>(offsets_[static_cast<std::size_t>(i)]),
        static_cast<std::size_t>(orders_[static_cast<std::size_t>(i)]));
}

std::vector<Event> HeldSignals::poll_states(const TriggerThresholds& thresholds,
                                            std::span<const double> x_all, double t) {
    if (!initialized_) throw ContractError("HeldSignals: poll before initialization");
    if (!(t > last_state_poll_)) throw ContractError("HeldSignals: non-monotone state poll time");
    if (x_all.size() != xbar_.size()) throw SpecError("HeldSignals: state vector size mismatch");
    last_state_poll_ = t;

    std::vector<Event> events;
    std::size_t ch = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        for (int k = 1; k <= orders_[i]; ++k, ++ch) {
            if (std::abs(x_all[ch] - xbar_[ch]) > thresholds.dx[i][static_cast<std::size_t>(k - 1)]) {
                xbar_[ch] = x_all[ch];
                state_events_[ch].push_back(t);
                events.push_back(Event{false, static_cast<int>(i) + 1, k, t});
            }
        }
    }
    return events;
}

std::vector<Event> HeldSignals::poll_inputs(const TriggerThresholds& thresholds,
                                            std::span<const double> v_all, double t) {
    if (!initialized_) throw ContractError("HeldSignals: poll before initialization");
    if (!(t > last_input_poll_)) throw ContractError("HeldSignals: non-monotone input poll time");
    if (v_all.size() != u_.size()) throw SpecError("HeldSignals: input vector size mismatch");
    last_input_poll_ = t;

    std::vector<Event> events;
    for (std::size_t i = 0; i < u_.size(); ++i) {
        if (std::abs(v_all[i] - u_[i]) > thresholds.du[i]) {
            u_[i] = v_all[i];
            input_events_[i].push_back(t);
            events.push_back(Event{true, static_cast<int>(i) + 1, 0, t});
        }
    }
    return events;
}

std::vector<Event> etm_step(const TriggerThresholds& thresholds, HeldSignals& held,
                            std::span<const double> x_all, std::span<const double> v_all,
                            double t) {
    std::vector<Event> events = held.poll_states(thresholds, x_all, t);
    std::vector<Event> input_events = held.poll_inputs(thresholds, v_all, t);
    events.insert(events.end(), input_events.begin(), input_events.end());
    return events;
}

std::vector<double> transform_z_triggered(const GainTable& table, int i,
                                          std::span<const double> xbar_i) {
    return transform_z(table, i, xbar_i);
}

double control_v(const GainTable& table, const PlantSpec& spec, int i,
                 std::span<const double> xbar_i, std::span<const double> theta_hat_i) {
    return control_u(table, spec, i, xbar_i, theta_hat_i);
}

std::vector<double> adapt_rate_triggered(const PlantSpec& spec, const ScenarioConfig& cfg, int i,
                                         std::span<const double> xbar_i,
                                         std::span<const double> theta_hat_i, double zbar_top) {
    return adapt_rate(spec, cfg, i, xbar_i, theta_hat_i, zbar_top);
}

}  // namespace detc
