#include "detc/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "detc/errors.hpp"

namespace detc {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw InternalError("format_double: conversion failed");
    return std::string(buf, ptr);
}

namespace {

void append_header(const SimResult& r, std::ostream& os) {
    os << "t";
    for (int i = 0; i < r.subsystem_count; ++i)
        for (int k = 1; k <= r.orders[static_cast<std::size_t>(i)]; ++k)
            os << ",x_" << i + 1 << "_" << k;
    for (int i = 0; i < r.subsystem_count; ++i) os << ",u_" << i + 1;
    if (r.kind == ControllerKind::Etcs)
        for (int i = 0; i < r.subsystem_count; ++i) os << ",v_" << i + 1;
    for (int i = 0; i < r.subsystem_count; ++i)
        for (int m = 1; m <= r.regressor_dims[static_cast<std::size_t>(i)]; ++m)
            os << ",theta_hat_" << i + 1 << "_" << m;
    os << "\n";
}

}  // namespace

void write_trajectory_csv(const SimResult& r, std::ostream& os) {
    append_header(r, os);
    for (std::size_t row = 0; row < r.time.size(); ++row) {
        os << format_double(r.time[row]);
        for (double v : r.x[row]) os << "," << format_double(v);
        for (double v : r.u[row]) os << "," << format_double(v);
        if (r.kind == ControllerKind::Etcs)
            for (double v : r.v[row]) os << "," << format_double(v);
        for (double v : r.theta_hat[row]) os << "," << format_double(v);
        os << "\n";
    }
}

std::string trajectory_csv(const SimResult& r) {
    std::ostringstream os;
    write_trajectory_csv(r, os);
    return os.str();
}

void write_events_csv(const SimResult& r, std::ostream& os) {
    if (r.kind != ControllerKind::Etcs)
        throw ContractError("events csv: requires a triggered-scheme result");
    os << "channel_id,kind,i,k,event_time\n";
    int channel_id = 0;
    const auto& state_logs = r.held.state_event_times();
    std::size_t ch = 0;
    for (int i = 0; i < r.subsystem_count; ++i)
        for (int k = 1; k <= r.orders[static_cast<std::size_t>(i)]; ++k, ++ch, ++channel_id)
            for (double t : state_logs[ch])
                os << channel_id << ",state," << i + 1 << "," << k << "," << format_double(t)
                   << "\n";
    const auto& input_logs = r.held.input_event_times();
    for (int i = 0; i < r.subsystem_count; ++i, ++channel_id)
        for (double t : input_logs[static_cast<std::size_t>(i)])
            os << channel_id << ",input," << i + 1 << ",0," << format_double(t) << "\n";
}

std::string events_csv(const SimResult& r) {
    std::ostringstream os;
    write_events_csv(r, os);
    return os.str();
}

std::string inter_event_stats_csv(const std::vector<ChannelStats>& stats) {
    std::ostringstream os;
    os << "channel_id,kind,i,k,count,min_gap,mean_gap\n";
    int channel_id = 0;
    for (const auto& s : stats) {
        os << channel_id++ << "," << (s.input ? "input" : "state") << "," << s.i << "," << s.k
           << "," << s.count << ",";
        if (s.min_gap) os << format_double(*s.min_gap);
        os << ",";
        if (s.mean_gap) os << format_double(*s.mean_gap);
        os << "\n";
    }
    return os.str();
}

TrajectoryTable read_trajectory_csv(std::istream& is) {
    TrajectoryTable table;
    std::string line;
    if (!std::getline(is, line)) throw ParseError("trajectory csv: empty input");
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) table.columns.push_back(cell);
    if (table.columns.empty() || table.columns[0] != "t")
        throw ParseError("trajectory csv: first column must be t");

    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> row;
        row.reserve(table.columns.size());
        const char* p = line.data();
        const char* end = line.data() + line.size();
        while (p <= end) {
            const char* comma = std::find(p, end, ',');
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(p, comma, v);
            if (ec != std::errc{} || ptr != comma)
                throw ParseError("trajectory csv: bad number at line " + std::to_string(line_no));
            row.push_back(v);
            if (comma == end) break;
            p = comma + 1;
        }
        if (row.size() != table.columns.size())
            throw ParseError("trajectory csv: column count mismatch at line " +
                             std::to_string(line_no));
        table.rows.push_back(std::move(row));
    }
    return table;
}

TrajectoryTable read_trajectory_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return read_trajectory_csv(in);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoError("failed writing " + path);
}

}  // namespace detc
