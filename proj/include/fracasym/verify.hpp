#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fracasym/kernels.hpp"
#include "fracasym/params.hpp"
#include "fracasym/radial.hpp"
#include "fracasym/report.hpp"
#include "fracasym/solver.hpp"

namespace fracasym {

enum class Theorem {
    Compact,
    Intermediate,
    Outer,
    OuterMass,
    OuterLog,
    Coherence,
    ConstantIdentity,
    KernelEstimates
};

std::string to_string(Theorem t);
Theorem parse_theorem(const std::string& name);

struct VerifyConfig {
    FracParams params;
    ForcingSpec forcing;
    Theorem theorem = Theorem::Compact;
    double p = 1.0;
    ScaleSpec scale;
    std::vector<double> times{1e2, 1e3, 1e4};
    double tolerance = 0.0;  ///< <= 0 selects the per-theorem default
    RadialGrid grid{1e-3, 1e5, 1024};        ///< solution slices
    RadialGrid kernel_grid{1e-3, 1e3, 768};  ///< self-similar profile G
    KernelOptions kernel;
    SolverOptions solver;
};

/// 5e-2 for pipeline comparisons, 1e-2 for scalar mass laws, 1e-3 for the constant identity.
double default_tolerance(Theorem t);

/// Checks the checkpoint list and the forcing hypotheses of the selected theorem.
void validate(const VerifyConfig& cfg);

/// The time-independent profile of the compact-set limit, amplitude included.
RadialFunction limit_profile_compact(const VerifyConfig& cfg, double kappa);
RadialFunction limit_profile_compact(const VerifyConfig& cfg);

/// Intermediate-scale profile L(rho, t) for the class of cfg.scale.
double limit_profile_intermediate(const VerifyConfig& cfg, ScaleClass cls, double kappa, double rho, double t);

/// Fitted exponent of ||E_mu||_{L^p(nu phi < rho < mu phi)} against phi.
double annulus_power_exponent(double mu_riesz, int dim, double p, double nu, double mu,
                              const std::vector<double>& phis);

ConvergenceReport verify_compact(const VerifyConfig& cfg);
ConvergenceReport verify_intermediate(const VerifyConfig& cfg);
ConvergenceReport verify_outer_general(const VerifyConfig& cfg);
ConvergenceReport verify_outer_mass(const VerifyConfig& cfg);
ConvergenceReport verify_outer_log(const VerifyConfig& cfg);
ConvergenceReport verify_coherence(const VerifyConfig& cfg);
ConvergenceReport verify_constant_identity(const VerifyConfig& cfg);
ConvergenceReport verify_kernel_estimates(const VerifyConfig& cfg);

/// Validates and dispatches on cfg.theorem.
ConvergenceReport run_verify(const VerifyConfig& cfg);

}  // namespace fracasym
