#pragma once

#include <vector>

#include <Eigen/Dense>

#include "detc/scenario.hpp"
#include "detc/types.hpp"

namespace detc {

/// Constant virtual-controller data of one subsystem. With the design
/// parameters fixed, every virtual controller is exactly linear in the
/// subsystem state:
///   α_{i,k}(x) = -K_{i,k} z_{i,k} - z_{i,k-1} + Σ_{l<k} ξ_{k-1,l} x_{l+1}
/// where K_{i,k} collects c_{i,k} plus the ϖ-reciprocal damping terms and
/// ξ_{k,l} = ∂α_{i,k}/∂x_{i,l} is constant.
struct SubsystemGains {
    int order = 0;
    std::vector<double> K;                ///< K[k-1], k = 1..n_i, each > c_{i,k}
    std::vector<std::vector<double>> xi;  ///< xi[k-1][l-1], rows k = 1..n_i-1
    Eigen::MatrixXd A;                    ///< unit lower-triangular, A x = B z
    Eigen::MatrixXd B;
    Eigen::MatrixXd T;                    ///< A⁻¹B, so x = T z exactly
    double lemma1_constant = 0.0;         ///< ‖A⁻¹B‖_F

    /// ξ_{k,l}; zero outside 1 <= l <= k <= order-1 (α_{i,k} does not
    /// depend on states above x_{i,k}).
    double xi_coeff(int k, int l) const;
};

struct GainTable {
    std::vector<SubsystemGains> sub;
};

/// Triggering-error propagation bounds: |z_{i,k} - z̄_{i,k}| <= Δz_{i,k} and
/// |α_{i,k} - ᾱ_{i,k}| <= Δα_{i,k} along any trajectory of the triggered
/// scheme. Homogeneous of degree one in the thresholds.
struct Lemma2Bounds {
    std::vector<std::vector<double>> dz;      ///< [i][k-1]
    std::vector<std::vector<double>> dalpha;  ///< [i][k-1]
};

/// Builds the full gain table from the design parameters in `cfg` (only c,
/// varpi1, varpi2 are read). The coefficient recursion follows from the
/// linearity of the virtual controllers; the transform matrices are built
/// both from the layered z/x relationship and from the direct
/// unit-triangular map z = M x, and the two constructions must agree.
/// Throws SpecError on nonpositive parameters or shape mismatch.
GainTable compute_gain_table(const ScenarioConfig& cfg, const std::vector<int>& orders);

/// ‖A_i⁻¹B_i‖_F: converts error-coordinate norms back to state norms,
/// ‖x_i‖ <= lemma1_constant(i)·‖z_i‖.
double lemma1_constant(const GainTable& table, int i);

/// Propagates per-channel thresholds through the coordinate transform:
///   Δz_{i,1} = Δx_{i,1},             Δα_{i,1} = K_{i,1} Δz_{i,1}
///   Δz_{i,k} = Δx_{i,k} + Δα_{i,k-1}
///   Δα_{i,k} = K_{i,k} Δz_{i,k} + Σ_{l<k} |ξ_{k-1,l}| Δx_{i,l+1} + Δz_{i,k-1}
Lemma2Bounds lemma2_bounds(const GainTable& table, const TriggerThresholds& thresholds);

}  // namespace detc
