#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "detc/sim.hpp"

namespace detc {

/// Shortest round-trip decimal representation ('.' separator, no locale).
std::string format_double(double v);

/// Trajectory table: header row, then one row per grid point with columns
/// t, x_i_k, u_i, v_i (triggered runs only), theta_hat_i_m.
void write_trajectory_csv(const SimResult& result, std::ostream& os);
std::string trajectory_csv(const SimResult& result);

/// Event log: channel_id, kind (state|input), i, k, event_time. Includes
/// the t = 0 initialization events. k is 0 for input channels.
void write_events_csv(const SimResult& result, std::ostream& os);
std::string events_csv(const SimResult& result);

/// Inter-event statistics: channel_id, kind, i, k, count, min_gap,
/// mean_gap. Gap columns are empty when a channel has fewer than two events.
std::string inter_event_stats_csv(const std::vector<ChannelStats>& stats);

/// Parsed trajectory table (column names + numeric rows).
struct TrajectoryTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};
TrajectoryTable read_trajectory_csv(std::istream& is);
TrajectoryTable read_trajectory_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace detc
