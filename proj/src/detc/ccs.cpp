#include "detc/ccs.hpp"

#include <cmath>
#include <sstream>

#include "detc/errors.hpp"

namespace detc {

namespace {

const SubsystemGains& subsystem(const GainTable& table, int i) {
    if (i < 0 || i >= static_cast<int>(table.sub.size()))
        throw ContractError("gain table: subsystem index out of range");
    return table.sub[static_cast<std::size_t>(i)];
}

// α_{i,k} given the z prefix up to index k.
double alpha_given_z(const SubsystemGains& g, int k, std::span<const double> x,
                     std::span<const double> z) {
    double a = -g.K[static_cast<std::size_t>(k - 1)] * z[static_cast<std::size_t>(k - 1)];
    if (k >= 2) {
        a -= z[static_cast<std::size_t>(k - 2)];
        for (int l = 1; l <= k - 1; ++l)
            a += g.xi_coeff(k - 1, l) * x[static_cast<std::size_t>(l)];  // x_{l+1}
    }
    return a;
}

}  // namespace

std::vector<double> transform_z(const GainTable& table, int i, std::span<const double> x_i) {
    const SubsystemGains& g = subsystem(table, i);
    if (x_i.size() != static_cast<std::size_t>(g.order))
        throw SpecError("transform_z: state vector size mismatch");
    std::vector<double> z(x_i.size());
    z[0] = x_i[0];
    for (int k = 2; k <= g.order; ++k)
        z[static_cast<std::size_t>(k - 1)] =
            x_i[static_cast<std::size_t>(k - 1)] - alpha_given_z(g, k - 1, x_i, z);
    return z;
}

double virtual_alpha(const GainTable& table, int i, int k, std::span<const double> x_i) {
    const SubsystemGains& g = subsystem(table, i);
    if (k < 1 || k > g.order) throw ContractError("virtual_alpha: step index out of range");
    if (x_i.size() != static_cast<std::size_t>(g.order))
        throw SpecError("virtual_alpha: state vector size mismatch");
    const auto z = transform_z(table, i, x_i);
    return alpha_given_z(g, k, x_i, z);
}

double control_u(const GainTable& table, const PlantSpec& spec, int i,
                 std::span<const double> x_i, std::span<const double> theta_hat_i) {
    const SubsystemGains& g = subsystem(table, i);
    if (x_i.size() != static_cast<std::size_t>(g.order))
        throw SpecError("control_u: state vector size mismatch");
    if (theta_hat_i.size() !=
        static_cast<std::size_t>(spec.regressor_dims[static_cast<std::size_t>(i)]))
        throw SpecError("control_u: estimate vector size mismatch");

    const double alpha_top = virtual_alpha(table, i, g.order, x_i);
    const auto phi = spec.phi[static_cast<std::size_t>(i)](x_i);
    double dot = 0.0;
    for (std::size_t m = 0; m < phi.size(); ++m) dot += phi[m] * theta_hat_i[m];
    const double psi = spec.psi[static_cast<std::size_t>(i)](x_i);
    const double u = alpha_top - dot - psi;
    if (!std::isfinite(u)) {
        std::ostringstream msg;
        msg << "control_u: non-finite input for subsystem " << i + 1;
        throw NumericError(msg.str(), i + 1, 0, 0.0);
    }
    return u;
}

std::vector<double> adapt_rate(const PlantSpec& spec, const ScenarioConfig& cfg, int i,
                               std::span<const double> x_i, std::span<const double> theta_hat_i,
                               double z_top) {
    const auto idx = static_cast<std::size_t>(i);
    if (!(cfg.sigma[idx] > 0.0) || !(cfg.gamma[idx] > 0.0))
        throw SpecError("adapt_rate: sigma and gamma must be strictly positive");
    const auto phi = spec.phi[idx](x_i);
    std::vector<double> rate(phi.size());
    for (std::size_t m = 0; m < phi.size(); ++m)
        rate[m] = cfg.gamma[idx] * (-cfg.sigma[idx] * theta_hat_i[m] + phi[m] * z_top);
    return rate;
}

}  // namespace detc
