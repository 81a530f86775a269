#include "detc/sim.hpp"

#include <cmath>

#include "detc/ccs.hpp"
#include "detc/config.hpp"
#include "detc/errors.hpp"

namespace detc {

namespace {
constexpr double kDivergenceGuard = 1e6;
}

int SimResult::state_offset(int i) const {
    int off = 0;
    for (int j = 0; j < i; ++j) off += orders[static_cast<std::size_t>(j)];
    return off;
}

int SimResult::theta_offset(int i) const {
    int off = 0;
    for (int j = 0; j < i; ++j) off += regressor_dims[static_cast<std::size_t>(j)];
    return off;
}

std::span<const double> SimResult::subsystem_state(std::size_t row, int i) const {
    return std::span<const double>(x[row]).subspan(
        static_cast<std::size_t>(state_offset(i)),
        static_cast<std::size_t>(orders[static_cast<std::size_t>(i)]));
}

std::span<const double> SimResult::subsystem_xbar(std::size_t row, int i) const {
    return std::span<const double>(xbar[row]).subspan(
        static_cast<std::size_t>(state_offset(i)),
        static_cast<std::size_t>(orders[static_cast<std::size_t>(i)]));
}

SimResult run(const PlantSpec& spec, const ScenarioConfig& cfg, ControllerKind kind) {
    spec.validate();
    cfg.validate(spec);
    const GainTable table = compute_gain_table(cfg, spec.orders);

    const int N = spec.subsystem_count;
    const int nx = spec.total_states();
    const int np = spec.total_params();
    const auto steps = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
    const double dt = cfg.dt;

    SimResult res;
    res.kind = kind;
    res.subsystem_count = N;
    res.orders = spec.orders;
    res.regressor_dims = spec.regressor_dims;
    res.dt = dt;

    // Joint state layout: [plant states | estimates].
    std::vector<double> X(static_cast<std::size_t>(nx + np));
    for (int i = 0; i < N; ++i) {
        const int xoff = spec.state_offset(i);
        for (int k = 0; k < spec.orders[static_cast<std::size_t>(i)]; ++k)
            X[static_cast<std::size_t>(xoff + k)] =
                cfg.x0[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        const int poff = spec.param_offset(i);
        for (int m = 0; m < spec.regressor_dims[static_cast<std::size_t>(i)]; ++m)
            X[static_cast<std::size_t>(nx + poff + m)] =
                cfg.theta_hat0[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
    }

    auto state_part = [&](std::span<const double> J) { return J.first(static_cast<std::size_t>(nx)); };
    auto theta_part = [&](std::span<const double> J) { return J.subspan(static_cast<std::size_t>(nx)); };
    auto theta_sub = [&](std::span<const double> J, int i) {
        return theta_part(J).subspan(
            static_cast<std::size_t>(spec.param_offset(i)),
            static_cast<std::size_t>(spec.regressor_dims[static_cast<std::size_t>(i)]));
    };

    const bool etcs = kind == ControllerKind::Etcs;
    HeldSignals held(spec.orders);
    std::vector<double> u_applied(static_cast<std::size_t>(N), 0.0);
    std::vector<double> v_now(static_cast<std::size_t>(N), 0.0);
    // z̄_{i,n_i}: constant between boundaries, refreshed after each ETM pass.
    std::vector<double> zbar_top(static_cast<std::size_t>(N), 0.0);

    auto recompute_v = [&](std::span<const double> th_all) {
        for (int i = 0; i < N; ++i)
            v_now[static_cast<std::size_t>(i)] =
                control_v(table, spec, i, held.xbar_subsystem(i), theta_sub(th_all, i));
    };
    auto refresh_zbar = [&]() {
        for (int i = 0; i < N; ++i)
            zbar_top[static_cast<std::size_t>(i)] =
                transform_z_triggered(table, i, held.xbar_subsystem(i)).back();
    };

    if (etcs) {
        // t = 0 broadcast: x̄ = x(0) first, then v from the held state.
        const std::vector<double> x0flat(state_part(X).begin(), state_part(X).end());
        std::vector<double> v0(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i)
            v0[static_cast<std::size_t>(i)] =
                control_v(table, spec, i, spec.subsystem_state(x0flat, i), theta_sub(X, i));
        held.initialize(x0flat, v0);
        u_applied.assign(held.u().begin(), held.u().end());
        v_now = v0;
        refresh_zbar();
    }

    double kappa_rate = 0.0;  // max observed |ẋ| over all stage evaluations

    // Joint right-hand side. The continuous scheme recomputes its input from
    // the stage state; the triggered scheme keeps the held input.
    std::vector<double> stage_u(static_cast<std::size_t>(N));
    auto rhs = [&](double t, std::span<const double> J, std::vector<double>& dJ) {
        dJ.resize(J.size());
        const auto xs = state_part(J);
        if (etcs) {
            stage_u = u_applied;
        } else {
            for (int i = 0; i < N; ++i)
                stage_u[static_cast<std::size_t>(i)] =
                    control_u(table, spec, i, spec.subsystem_state(xs, i), theta_sub(J, i));
        }
        const auto dx = plant_derivative(spec, xs, stage_u, t);
        for (int c = 0; c < nx; ++c) {
            dJ[static_cast<std::size_t>(c)] = dx[static_cast<std::size_t>(c)];
            kappa_rate = std::max(kappa_rate, std::abs(dx[static_cast<std::size_t>(c)]));
        }
        for (int i = 0; i < N; ++i) {
            std::vector<double> rate;
            if (etcs) {
                rate = adapt_rate_triggered(spec, cfg, i, held.xbar_subsystem(i), theta_sub(J, i),
                                            zbar_top[static_cast<std::size_t>(i)]);
            } else {
                const auto xi = spec.subsystem_state(xs, i);
                rate = adapt_rate(spec, cfg, i, xi, theta_sub(J, i),
                                  transform_z(table, i, xi).back());
            }
            const int poff = spec.param_offset(i);
            for (std::size_t m = 0; m < rate.size(); ++m)
                dJ[static_cast<std::size_t>(nx + poff) + m] = rate[m];
        }
    };

    auto record = [&](double t) {
        res.time.push_back(t);
        res.x.emplace_back(state_part(X).begin(), state_part(X).end());
        res.theta_hat.emplace_back(theta_part(X).begin(), theta_part(X).end());
        if (etcs) {
            res.u.push_back(u_applied);
            res.v.push_back(v_now);
            res.xbar.emplace_back(held.xbar().begin(), held.xbar().end());
        } else {
            std::vector<double> u_row(static_cast<std::size_t>(N));
            for (int i = 0; i < N; ++i)
                u_row[static_cast<std::size_t>(i)] =
                    control_u(table, spec, i, spec.subsystem_state(state_part(X), i), theta_sub(X, i));
            res.u.push_back(std::move(u_row));
        }
    };

    record(0.0);

    std::vector<double> k1, k2, k3, k4;
    std::vector<double> work(X.size());
    for (std::size_t n = 0; n < steps; ++n) {
        const double t = static_cast<double>(n) * dt;
        rhs(t, X, k1);
        for (std::size_t c = 0; c < X.size(); ++c) work[c] = X[c] + 0.5 * dt * k1[c];
        rhs(t + 0.5 * dt, work, k2);
        for (std::size_t c = 0; c < X.size(); ++c) work[c] = X[c] + 0.5 * dt * k2[c];
        rhs(t + 0.5 * dt, work, k3);
        for (std::size_t c = 0; c < X.size(); ++c) work[c] = X[c] + dt * k3[c];
        rhs(t + dt, work, k4);
        for (std::size_t c = 0; c < X.size(); ++c)
            X[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);

        const double t_next = static_cast<double>(n + 1) * dt;
        if (etcs) {
            held.poll_states(cfg.thresholds, state_part(X), t_next);
            recompute_v(X);
            held.poll_inputs(cfg.thresholds, v_now, t_next);
            u_applied.assign(held.u().begin(), held.u().end());
            refresh_zbar();
        }
        record(t_next);

        bool diverged = false;
        for (int c = 0; c < nx; ++c)
            if (std::abs(X[static_cast<std::size_t>(c)]) > kDivergenceGuard) diverged = true;
        if (diverged) {
            res.truncated = true;
            res.truncated_step = n + 1;
            break;
        }
    }

    res.held = std::move(held);
    res.kappa = kappa_rate * dt;
    res.config_fingerprint = config_fingerprint(cfg);
    return res;
}

std::vector<ChannelStats> inter_event_stats(const SimResult& result) {
    if (result.kind != ControllerKind::Etcs)
        throw ContractError("inter_event_stats: requires a triggered-scheme result");

    std::vector<ChannelStats> stats;
    auto summarize = [&](const std::vector<double>& times, bool input, int i, int k) {
        ChannelStats s;
        s.input = input;
        s.i = i;
        s.k = k;
        int post_init = 0;
        for (double t : times)
            if (t > 0.0) ++post_init;
        s.count = post_init;
        if (times.size() >= 2) {
            // Events land on grid boundaries; gaps are exact step counts.
            long long min_steps = 0, sum_steps = 0;
            long long prev = std::llround(times[0] / result.dt);
            for (std::size_t e = 1; e < times.size(); ++e) {
                const long long cur = std::llround(times[e] / result.dt);
                const long long gap = cur - prev;
                min_steps = (e == 1) ? gap : std::min(min_steps, gap);
                sum_steps += gap;
                prev = cur;
            }
            s.min_gap = static_cast<double>(min_steps) * result.dt;
            s.mean_gap = static_cast<double>(sum_steps) * result.dt /
                         static_cast<double>(times.size() - 1);
        }
        stats.push_back(std::move(s));
    };

    std::size_t ch = 0;
    for (std::size_t i = 0; i < result.orders.size(); ++i)
        for (int k = 1; k <= result.orders[i]; ++k, ++ch)
            summarize(result.held.state_event_times()[ch], false, static_cast<int>(i) + 1, k);
    for (std::size_t i = 0; i < result.held.input_event_times().size(); ++i)
        summarize(result.held.input_event_times()[i], true, static_cast<int>(i) + 1, 0);
    return stats;
}

}  // namespace detc
