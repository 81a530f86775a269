#pragma once

#include <vector>

namespace detc {

enum class ControllerKind { Ccs, Etcs };

/// Event-triggering thresholds: one Δx per state channel, one Δu per
/// subsystem input. All strictly positive. A state channel's threshold is
/// shared by every receiver of that channel's broadcasts.
struct TriggerThresholds {
    std::vector<std::vector<double>> dx;  ///< dx[i][k-1], subsystem i, channel k
    std::vector<double> du;               ///< du[i]

    TriggerThresholds scaled(double factor) const;
    void validate(const std::vector<int>& orders) const;
};

/// One broadcast event. Indices are one-based to match the channel labels
/// used in emitted CSV; k == 0 marks an input-channel event.
struct Event {
    bool input = false;
    int i = 0;
    int k = 0;
    double t = 0.0;
};

}  // namespace detc
