#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "fracasym/params.hpp"
#include "fracasym/radial.hpp"
#include "fracasym/radialtransform.hpp"

namespace fracasym {

/// Interior, exterior and global checks of G against its two-sided power bounds.
struct BoundReport {
    bool applicable = false;
    std::string note;
    // (i) interior: rho^{N-4beta} G on [rho_min, 1]
    double interior_min = 0.0, interior_max = 0.0, interior_ratio = 0.0;
    bool interior_pass = false;
    // (ii) exterior log-log slope on [5, rho_max/2]
    bool exterior_applicable = false;
    double exterior_slope = 0.0, exterior_target = 0.0, exterior_rel_error = 0.0;
    bool exterior_pass = false;
    // (iii) global: G <= C rho^{4beta-N} with C from the interior fit
    double global_constant = 0.0;
    bool global_pass = false;
};

struct KappaFit {
    bool applicable = false;
    bool ok = false;         ///< a decade with variation < 1% was found
    double value = 0.0;
    double variation = 0.0;  ///< max |rho^{N-4beta}G / mean - 1| over the decade
    double decade_lo = 0.0, decade_hi = 0.0;
    std::string note;
};

/// Self-similar profile of Z (F) or Y (G) at t = 1.
struct KernelProfile {
    enum class Which { Z, Y };
    FracParams params;
    Exponents exps;
    Which which = Which::Y;
    RadialFunction values;
    KappaFit kappa;              ///< Y only
    double constant_A = 0.0;     ///< Y only
    BoundReport bounds;          ///< Y only
    bool from_cache = false;
};

struct KernelOptions {
    TransformOptions transform;
    std::string cache_dir;  ///< empty: FRACASYM_CACHE if set, else no caching
    bool use_cache = true;
};

/// F: inverse transform of r -> E_alpha(-r^{2beta}).
KernelProfile build_z_profile(const FracParams& params, const RadialGrid& grid,
                              const KernelOptions& opt = {});
/// G: inverse transform of r -> E_{alpha,alpha}(-r^{2beta}); kappa, A and bounds filled in.
KernelProfile build_y_profile(const FracParams& params, const RadialGrid& grid,
                              const KernelOptions& opt = {});

/// Plateau of rho^{N-4beta} G(rho) over the lowest decade with variation < 1%.
KappaFit estimate_kappa(const KernelProfile& profile);

/// (1/theta) int_0^inf rho^{N-1-2beta} G(rho) drho with closed-form tails.
double constant_A(const KernelProfile& profile);

BoundReport validate_bounds(const KernelProfile& profile);

/// Y(rho, t) = t^{-sigma_*} G(rho t^{-theta}).
double evaluate_Y(const KernelProfile& profile, double rho, double t);
/// Z(rho, t) = t^{-N theta} F(rho t^{-theta}).
double evaluate_Z(const KernelProfile& profile, double rho, double t);

/// The profile rescaled to time t as a RadialFunction (Y or Z according to `which`).
RadialFunction kernel_slice(const KernelProfile& profile, double t);

/// int_0^T Y(rho, s) ds through the profile moment.
double time_integral_Y(const KernelProfile& profile, double rho, double T);

/// Cache key file stem for (alpha, beta, dim, grid hash).
std::string cache_stem(const KernelProfile::Which which, const FracParams& params, const RadialGrid& grid);

nlohmann::json to_json(const KernelProfile& profile);
nlohmann::json to_json(const BoundReport& b);

}  // namespace fracasym
