#include "detc/scenario.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "detc/errors.hpp"

namespace detc {

TriggerThresholds TriggerThresholds::scaled(double factor) const {
    TriggerThresholds out = *this;
    for (auto& row : out.dx)
        for (auto& v : row) v *= factor;
    for (auto& v : out.du) v *= factor;
    return out;
}

void TriggerThresholds::validate(const std::vector<int>& orders) const {
    const auto n = orders.size();
    if (dx.size() != n || du.size() != n)
        throw SpecError("thresholds: expected one dx row and one du entry per subsystem");
    for (std::size_t i = 0; i < n; ++i) {
        if (dx[i].size() != static_cast<std::size_t>(orders[i]))
            throw SpecError("thresholds: dx row size must equal subsystem order");
        for (double v : dx[i])
            if (!(v > 0.0)) throw SpecError("thresholds: dx entries must be strictly positive");
        if (!(du[i] > 0.0)) throw SpecError("thresholds: du entries must be strictly positive");
    }
}

int PlantSpec::total_states() const {
    int n = 0;
    for (int ni : orders) n += ni;
    return n;
}

int PlantSpec::total_params() const {
    int p = 0;
    for (int pi : regressor_dims) p += pi;
    return p;
}

int PlantSpec::state_offset(int i) const {
    int off = 0;
    for (int j = 0; j < i; ++j) off += orders[j];
    return off;
}

int PlantSpec::param_offset(int i) const {
    int off = 0;
    for (int j = 0; j < i; ++j) off += regressor_dims[j];
    return off;
}

std::span<const double> PlantSpec::subsystem_state(std::span<const double> x_all, int i) const {
    return x_all.subspan(static_cast<std::size_t>(state_offset(i)),
                         static_cast<std::size_t>(orders[i]));
}

std::span<const double> PlantSpec::subsystem_params(std::span<const double> th_all, int i) const {
    return th_all.subspan(static_cast<std::size_t>(param_offset(i)),
                          static_cast<std::size_t>(regressor_dims[i]));
}

void PlantSpec::validate() const {
    const int n = subsystem_count;
    if (n < 1) throw SpecError("plant: subsystem_count must be >= 1");
    if (orders.size() != static_cast<std::size_t>(n) ||
        regressor_dims.size() != static_cast<std::size_t>(n) ||
        phi.size() != static_cast<std::size_t>(n) || psi.size() != static_cast<std::size_t>(n) ||
        theta.size() != static_cast<std::size_t>(n) ||
        couplings.size() != static_cast<std::size_t>(n))
        throw SpecError("plant: per-subsystem containers must all have subsystem_count entries");
    for (int i = 0; i < n; ++i) {
        if (orders[i] < 1) throw SpecError("plant: subsystem orders must be >= 1");
        if (regressor_dims[i] < 0) throw SpecError("plant: regressor dimensions must be >= 0");
        if (couplings[i].size() != static_cast<std::size_t>(n))
            throw SpecError("plant: coupling table must have one row per source subsystem");
        for (int j = 0; j < n; ++j)
            if (couplings[i][j].size() != static_cast<std::size_t>(orders[i]))
                throw SpecError("plant: coupling table must cover exactly k = 1..n_i per (i,j)");
    }
    // Evaluability probe at the origin / t = 0. Piecewise continuity of
    // θ_i(t) remains the caller's responsibility.
    for (int i = 0; i < n; ++i) {
        std::vector<double> zero(static_cast<std::size_t>(orders[i]), 0.0);
        if (phi[i](zero).size() != static_cast<std::size_t>(regressor_dims[i]))
            throw SpecError("plant: phi_" + std::to_string(i + 1) +
                            " dimension does not match regressor_dims");
        (void)psi[i](zero);
        if (theta[i](0.0).size() != static_cast<std::size_t>(regressor_dims[i]))
            throw SpecError("plant: theta_" + std::to_string(i + 1) +
                            " dimension does not match regressor_dims");
    }
}

void ScenarioConfig::validate(const PlantSpec& spec) const {
    const int n = spec.subsystem_count;
    auto require_rows = [&](const auto& table, const char* what) {
        if (table.size() != static_cast<std::size_t>(n))
            throw SpecError(std::string("config: ") + what + " must have one row per subsystem");
    };
    require_rows(c, "c");
    require_rows(varpi1, "varpi1");
    require_rows(varpi2, "varpi2");
    require_rows(x0, "init.x");
    require_rows(theta_hat0, "init.theta_hat");
    if (sigma.size() != static_cast<std::size_t>(n) || gamma.size() != static_cast<std::size_t>(n))
        throw SpecError("config: sigma and gamma must have one entry per subsystem");
    for (int i = 0; i < n; ++i) {
        const auto ni = static_cast<std::size_t>(spec.orders[i]);
        if (c[i].size() != ni) throw SpecError("config: c row size must equal subsystem order");
        for (double v : c[i])
            if (!(v > 0.0)) throw SpecError("config: c entries must be strictly positive");
        if (varpi1[i].size() != static_cast<std::size_t>(n) ||
            varpi2[i].size() != static_cast<std::size_t>(n))
            throw SpecError("config: varpi tables must be N x N x n_i");
        for (int j = 0; j < n; ++j) {
            if (varpi1[i][j].size() != ni || varpi2[i][j].size() != ni)
                throw SpecError("config: varpi tables must be N x N x n_i");
            for (std::size_t k = 0; k < ni; ++k)
                if (!(varpi1[i][j][k] > 0.0) || !(varpi2[i][j][k] > 0.0))
                    throw SpecError("config: varpi entries must be strictly positive");
        }
        if (!(sigma[i] > 0.0)) throw SpecError("config: sigma entries must be strictly positive");
        if (!(gamma[i] > 0.0)) throw SpecError("config: gamma entries must be strictly positive");
        if (x0[i].size() != ni) throw SpecError("config: init.x row size must equal subsystem order");
        if (theta_hat0[i].size() != static_cast<std::size_t>(spec.regressor_dims[i]))
            throw SpecError("config: init.theta_hat row size must equal regressor dimension");
    }
    thresholds.validate(spec.orders);
    if (!(dt > 0.0)) throw SpecError("config: dt must be > 0");
    if (!(horizon > dt)) throw SpecError("config: horizon must be > dt");
}

std::vector<double> plant_derivative(const PlantSpec& spec, std::span<const double> x_all,
                                     std::span<const double> u_all, double t) {
    if (x_all.size() != static_cast<std::size_t>(spec.total_states()))
        throw SpecError("plant_derivative: state vector size mismatch");
    if (u_all.size() != static_cast<std::size_t>(spec.subsystem_count))
        throw SpecError("plant_derivative: input vector size mismatch");

    std::vector<double> dx(x_all.size(), 0.0);
    for (int i = 0; i < spec.subsystem_count; ++i) {
        const int ni = spec.orders[i];
        const int off = spec.state_offset(i);
        const auto xi = spec.subsystem_state(x_all, i);
        for (int k = 1; k <= ni; ++k) {
            double d;
            if (k < ni) {
                d = x_all[static_cast<std::size_t>(off + k)];
            } else {
                const auto phi = spec.phi[i](xi);
                const auto th = spec.theta[i](t);
                double dot = 0.0;
                for (std::size_t m = 0; m < phi.size(); ++m) dot += phi[m] * th[m];
                d = u_all[static_cast<std::size_t>(i)] + dot + spec.psi[i](xi);
            }
            for (int j = 0; j < spec.subsystem_count; ++j)
                d += spec.couplings[i][j][static_cast<std::size_t>(k - 1)](
                    spec.subsystem_state(x_all, j), u_all, t);
            if (!std::isfinite(d)) {
                std::ostringstream msg;
                msg << "plant_derivative: non-finite dx_{" << i + 1 << "," << k << "} at t=" << t;
                throw NumericError(msg.str(), i + 1, k, t);
            }
            dx[static_cast<std::size_t>(off + k - 1)] = d;
        }
    }
    return dx;
}

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

CouplingFn zero_coupling() {
    return [](std::span<const double>, std::span<const double>, double) { return 0.0; };
}

Scenario make_sec5(bool set2) {
    PlantSpec plant;
    plant.name = set2 ? "sec5_set2" : "sec5";
    plant.subsystem_count = 2;
    plant.orders = {2, 2};
    plant.regressor_dims = {1, 1};

    // Both subsystems share the regressor shape 0.2(x_1^2 + x_2) + 3cos(x_1 x_2).
    RegressorFn reg = [](std::span<const double> x) {
        return std::vector<double>{0.2 * (x[0] * x[0] + x[1]) + 3.0 * std::cos(x[0] * x[1])};
    };
    plant.phi = {reg, reg};
    plant.psi = {[](std::span<const double>) { return 0.0; },
                 [](std::span<const double>) { return 0.0; }};
    plant.theta = {
        [](double t) { return std::vector<double>{0.1 + 0.1 * std::sin(0.2 * t)}; },
        [](double t) { return std::vector<double>{0.1 + 0.1 * std::cos(0.2 * t)}; }};

    auto f11_1 = [](std::span<const double> x, std::span<const double> u, double) {
        return 0.1 * std::sin(u[0] * u[1]) * norm2(x);
    };
    auto f12_1 = [](std::span<const double> x, std::span<const double>, double) {
        return 0.15 * norm2(x);
    };
    auto f11_2 = [](std::span<const double> x, std::span<const double>, double) {
        return 0.1 * norm2(x);
    };
    auto f12_2 = [](std::span<const double> x, std::span<const double>, double) {
        return 0.15 * std::sin(norm2(x));
    };
    auto f21_1 = [](std::span<const double> x, std::span<const double>, double) {
        return 0.15 * norm2(x);
    };
    auto f22_1 = [](std::span<const double> x, std::span<const double> u, double) {
        return 0.1 * std::cos(u[0] * u[1]) * norm2(x);
    };
    auto f21_2 = [](std::span<const double> x, std::span<const double>, double) {
        return 0.15 * norm2(x);
    };
    auto f22_2 = [](std::span<const double> x, std::span<const double>, double) {
        return 0.1 * std::log(1.0 + norm2(x));
    };
    plant.couplings = {{{f11_1, f11_2}, {f12_1, f12_2}}, {{f21_1, f21_2}, {f22_1, f22_2}}};

    plant.notes = {
        "phi_i(0) = 3 by the printed benchmark, although the model class asks for phi_i(0) = 0",
        "phi_i is quadratic in x_{i,1}, hence not globally Lipschitz; implemented as printed"};

    ScenarioConfig cfg;
    cfg.scenario_name = plant.name;
    cfg.c = {{0.5, 0.3}, {1.8, 1.5}};
    cfg.varpi1 = {{{1.0, 1.0}, {1.0, 1.0}}, {{1.0, 1.0}, {1.0, 1.0}}};
    cfg.varpi2 = cfg.varpi1;
    cfg.sigma = {0.001, 0.001};
    cfg.gamma = {0.5, 0.5};
    if (set2)
        cfg.thresholds = {{{0.005, 0.005}, {0.003, 0.003}}, {0.03, 0.03}};
    else
        cfg.thresholds = {{{0.001, 0.002}, {0.002, 0.002}}, {0.01, 0.01}};
    cfg.x0 = {{0.2, 0.2}, {0.1, 0.1}};
    cfg.theta_hat0 = {{0.0}, {0.0}};
    cfg.dt = 1e-3;
    cfg.horizon = 30.0;
    return Scenario{std::move(plant), std::move(cfg)};
}

// Identically zero dynamics from the origin: handy for exercising the
// trivial fixed point (no motion, no post-initialization events).
Scenario make_zero() {
    Scenario s = make_sec5(false);
    s.plant.name = "zero";
    s.plant.notes.clear();
    RegressorFn z1 = [](std::span<const double>) { return std::vector<double>{0.0}; };
    s.plant.phi = {z1, z1};
    s.plant.theta = {[](double) { return std::vector<double>{0.0}; },
                     [](double) { return std::vector<double>{0.0}; }};
    for (auto& row : s.plant.couplings)
        for (auto& cell : row)
            for (auto& f : cell) f = zero_coupling();
    s.config.scenario_name = "zero";
    s.config.x0 = {{0.0, 0.0}, {0.0, 0.0}};
    return s;
}

}  // namespace

Scenario builtin_sec5_scenario() { return make_sec5(false); }

Scenario builtin_scenario(const std::string& name) {
    Scenario s;
    if (name == "sec5")
        s = make_sec5(false);
    else if (name == "sec5_set2")
        s = make_sec5(true);
    else if (name == "zero")
        s = make_zero();
    else
        throw SpecError("unknown scenario \"" + name + "\"");
    s.plant.validate();
    s.config.validate(s.plant);
    return s;
}

std::vector<std::string> builtin_scenario_names() { return {"sec5", "sec5_set2", "zero"}; }

AssumptionEstimates estimate_assumption_constants(const PlantSpec& spec, const SampleBox& box,
                                                  int sample_count, std::uint64_t seed) {
    if (!(std::isfinite(box.x_lo) && std::isfinite(box.x_hi) && box.x_lo <= box.x_hi &&
          std::isfinite(box.u_lo) && std::isfinite(box.u_hi) && box.u_lo <= box.u_hi &&
          std::isfinite(box.t_hi) && box.t_hi >= 0.0))
        throw SpecError("estimate_assumption_constants: sample box must be bounded");
    if (sample_count < 1) throw SpecError("estimate_assumption_constants: sample count must be >= 1");

    const int n = spec.subsystem_count;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(box.x_lo, box.x_hi);
    std::uniform_real_distribution<double> uu(box.u_lo, box.u_hi);
    std::uniform_real_distribution<double> ut(0.0, box.t_hi);
    constexpr double kRatioOffset = 1e-12;

    AssumptionEstimates est;
    est.hbar.assign(n, {});
    est.epsilon.assign(n, {});
    est.lipschitz_phi.assign(n, 0.0);
    est.lipschitz_psi.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        est.hbar[i].assign(n, std::vector<double>(static_cast<std::size_t>(spec.orders[i]), 0.0));
        est.epsilon[i] = est.hbar[i];
    }

    auto check_finite = [](double v, const char* what) {
        if (!std::isfinite(v)) throw NumericError(std::string(what) + " evaluated non-finite", 0, 0, 0.0);
        return v;
    };

    std::vector<double> u(static_cast<std::size_t>(n));
    for (int s = 0; s < sample_count; ++s) {
        for (auto& v : u) v = uu(rng);
        const double t = ut(rng);
        for (int j = 0; j < n; ++j) {
            std::vector<double> xj(static_cast<std::size_t>(spec.orders[j]));
            for (auto& v : xj) v = ux(rng);
            const std::vector<double> zero(xj.size(), 0.0);
            const double nx = norm2(xj);
            for (int i = 0; i < n; ++i) {
                for (int k = 1; k <= spec.orders[i]; ++k) {
                    const auto& f = spec.couplings[i][j][static_cast<std::size_t>(k - 1)];
                    const double fv = check_finite(std::abs(f(xj, u, t)), "coupling");
                    const double f0 = check_finite(std::abs(f(zero, u, t)), "coupling");
                    auto& h = est.hbar[i][j][static_cast<std::size_t>(k - 1)];
                    auto& e = est.epsilon[i][j][static_cast<std::size_t>(k - 1)];
                    h = std::max(h, fv / (nx + kRatioOffset));
                    e = std::max(e, f0);
                }
            }
            // Difference quotients of phi_j / psi_j on a second point.
            std::vector<double> yj(xj.size());
            for (auto& v : yj) v = ux(rng);
            std::vector<double> diff(xj.size());
            for (std::size_t m = 0; m < xj.size(); ++m) diff[m] = xj[m] - yj[m];
            const double dist = norm2(diff);
            if (dist > 0.0) {
                const auto pa = spec.phi[j](xj);
                const auto pb = spec.phi[j](yj);
                std::vector<double> dphi(pa.size());
                for (std::size_t m = 0; m < pa.size(); ++m)
                    dphi[m] = check_finite(pa[m], "phi") - check_finite(pb[m], "phi");
                est.lipschitz_phi[j] = std::max(est.lipschitz_phi[j], norm2(dphi) / dist);
                const double dpsi = std::abs(check_finite(spec.psi[j](xj), "psi") -
                                             check_finite(spec.psi[j](yj), "psi"));
                est.lipschitz_psi[j] = std::max(est.lipschitz_psi[j], dpsi / dist);
            }
        }
    }
    return est;
}

}  // namespace detc
