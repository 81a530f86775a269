#pragma once

#include <span>
#include <vector>

#include "detc/gains.hpp"
#include "detc/scenario.hpp"

namespace detc {

/// Error coordinates of subsystem i: z_1 = x_1, z_k = x_k - α_{k-1}(x).
std::vector<double> transform_z(const GainTable& table, int i, std::span<const double> x_i);

/// Virtual controller α_{i,k}(x_i), 1 <= k <= n_i. Exactly linear in x_i.
/// Throws ContractError when k is out of range.
double virtual_alpha(const GainTable& table, int i, int k, std::span<const double> x_i);

/// Continuous control law: u_i = α_{i,n_i}(x_i) - φ_i(x_i)ᵀθ̂_i - ψ_i(x_i).
double control_u(const GainTable& table, const PlantSpec& spec, int i,
                 std::span<const double> x_i, std::span<const double> theta_hat_i);

/// Estimate update rate: Γ_i(-σ_i θ̂_i + φ_i(x_i) z_{i,n_i}), with
/// Γ_i = gamma_i·I. The caller supplies the top error coordinate.
std::vector<double> adapt_rate(const PlantSpec& spec, const ScenarioConfig& cfg, int i,
                               std::span<const double> x_i, std::span<const double> theta_hat_i,
                               double z_top);

}  // namespace detc
