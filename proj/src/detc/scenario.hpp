#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "detc/types.hpp"

namespace detc {

/// Regressor φ_i: subsystem state vector -> p_i-dimensional vector.
using RegressorFn = std::function<std::vector<double>(std::span<const double>)>;
/// Drift ψ_i: subsystem state vector -> scalar.
using DriftFn = std::function<double(std::span<const double>)>;
/// Time-varying parameter signal θ_i: time (s) -> p_i-dimensional vector.
using ParamSignalFn = std::function<std::vector<double>(double)>;
/// Coupling f_{ij,k}(x_j, u, t). Receives the full input vector: the
/// benchmark's modeling-error terms mix both subsystem inputs, so the
/// per-subsystem input alone is not enough to evaluate them.
using CouplingFn =
    std::function<double(std::span<const double>, std::span<const double>, double)>;

/// Optional growth/Lipschitz constants of the plant uncertainty model.
/// Pure metadata: no controller or simulation path reads them.
struct AssumptionConstants {
    std::vector<std::vector<std::vector<double>>> hbar;     ///< [i][j][k-1]
    std::vector<std::vector<std::vector<double>>> epsilon;  ///< [i][j][k-1]
    std::vector<double> lipschitz_phi;
    std::vector<double> lipschitz_psi;
    std::vector<double> beta_theta;
};

/// Interconnected plant: N chained-integrator subsystems, each of order n_i,
/// with a parameterized uncertainty φ_i(x_i)ᵀθ_i(t) + ψ_i(x_i) entering the
/// last integrator and cross couplings f_{ij,k} entering every channel.
///
/// Immutable after construction and safe to share across concurrent runs;
/// all function members must be pure.
struct PlantSpec {
    std::string name;
    int subsystem_count = 0;
    std::vector<int> orders;          ///< n_i >= 1
    std::vector<int> regressor_dims;  ///< p_i
    std::vector<RegressorFn> phi;
    std::vector<DriftFn> psi;
    std::vector<ParamSignalFn> theta;
    /// couplings[i][j][k-1]; the table covers exactly k = 1..n_i per (i,j).
    std::vector<std::vector<std::vector<CouplingFn>>> couplings;
    std::optional<AssumptionConstants> assumptions;
    /// Free-form modelling caveats recorded with the scenario.
    std::vector<std::string> notes;

    int total_states() const;
    int total_params() const;
    /// Offset of subsystem i's first state in the flattened state vector.
    int state_offset(int i) const;
    int param_offset(int i) const;
    std::span<const double> subsystem_state(std::span<const double> x_all, int i) const;
    std::span<const double> subsystem_params(std::span<const double> th_all, int i) const;

    /// Checks structural invariants and that every function member is
    /// evaluable at a benign probe point. Throws SpecError.
    void validate() const;
};

/// Numeric run configuration: controller design parameters, ETM thresholds,
/// initial conditions and integration grid. Immutable after construction.
struct ScenarioConfig {
    std::string scenario_name;
    std::vector<std::vector<double>> c;                    ///< c[i][k-1] > 0
    std::vector<std::vector<std::vector<double>>> varpi1;  ///< [i][j][k-1] > 0
    std::vector<std::vector<std::vector<double>>> varpi2;  ///< [i][j][k-1] > 0
    std::vector<double> sigma;  ///< σ_i > 0
    std::vector<double> gamma;  ///< Γ_i = gamma_i · I with gamma_i > 0
    TriggerThresholds thresholds;
    std::vector<std::vector<double>> x0;          ///< [i][k-1]
    std::vector<std::vector<double>> theta_hat0;  ///< [i][m]
    double dt = 1e-3;      ///< step size (s)
    double horizon = 30.0; ///< final time (s)

    void validate(const PlantSpec& spec) const;
};

/// A plant together with its run configuration.
struct Scenario {
    PlantSpec plant;
    ScenarioConfig config;
};

/// Right-hand side of the interconnected plant over the flattened state:
///   ẋ_{i,k}   = x_{i,k+1} + Σ_j f_{ij,k}(x_j, u, t)          for k < n_i
///   ẋ_{i,n_i} = u_i + φ_i(x_i)ᵀθ_i(t) + ψ_i(x_i) + Σ_j f_{ij,n_i}
/// Deterministic: identical inputs give bit-identical outputs.
/// Throws SpecError on dimension mismatch, NumericError (with subsystem,
/// channel, time) if any component evaluates non-finite.
std::vector<double> plant_derivative(const PlantSpec& spec, std::span<const double> x_all,
                                     std::span<const double> u_all, double t);

/// Two-subsystem benchmark (both subsystems of order 2, scalar regressors)
/// with threshold set 1. The same plant with the larger threshold set 2 is
/// registered as "sec5_set2".
Scenario builtin_sec5_scenario();

/// Look up a registered scenario by name ("sec5", "sec5_set2", "zero").
/// Throws SpecError for unknown names.
Scenario builtin_scenario(const std::string& name);
std::vector<std::string> builtin_scenario_names();

/// Sampling region for estimate_assumption_constants. States are drawn
/// uniformly from [x_lo, x_hi] per component, inputs from [u_lo, u_hi],
/// times from [0, t_hi].
struct SampleBox {
    double x_lo = -1.0;
    double x_hi = 1.0;
    double u_lo = -1.0;
    double u_hi = 1.0;
    double t_hi = 10.0;
};

/// Sampled lower estimates of the assumption constants. True constants can
/// only be larger: each value is a maximum of finitely many sample ratios.
struct AssumptionEstimates {
    std::vector<std::vector<std::vector<double>>> hbar;     ///< [i][j][k-1]
    std::vector<std::vector<std::vector<double>>> epsilon;  ///< [i][j][k-1]
    std::vector<double> lipschitz_phi;
    std::vector<double> lipschitz_psi;
};

/// Monte-Carlo probe of the coupling growth bounds and regressor/drift
/// Lipschitz constants: max over samples of |f_{ij,k}|/(‖x_j‖ + offset),
/// |f_{ij,k}(0, u, t)| and pairwise difference quotients of φ_i/ψ_i.
AssumptionEstimates estimate_assumption_constants(const PlantSpec& spec, const SampleBox& box,
                                                  int sample_count, std::uint64_t seed = 0x5ec5u);

}  // namespace detc
