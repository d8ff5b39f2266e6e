#pragma once

#include <string>

#include <json.hpp>

#include "fracasym/params.hpp"
#include "fracasym/radial.hpp"
#include "fracasym/radialtransform.hpp"

namespace fracasym {

/// Separable forcing f(x, t) = amplitude * g(|x|) * (1 + t)^{-gamma}.
struct ForcingSpec {
    enum class Family { Gaussian, Bump, HeavyTail };
    Family family = Family::Gaussian;
    double width = 1.0;   ///< Gaussian: g = exp(-rho^2 / w^2)
    double radius = 1.0;  ///< bump: g = (1 - rho^2/R^2)_+^2
    double gamma = 2.0;
    double amplitude = 1.0;
};

std::string to_string(ForcingSpec::Family f);
ForcingSpec::Family parse_family(const std::string& name);
void validate(const ForcingSpec& fs);
nlohmann::json to_json(const ForcingSpec& fs);

/// g(rho), without the amplitude. Heavy tail: (1 + rho^2)^{-(N+1)/2}.
double forcing_profile(const ForcingSpec& fs, int dim, double rho);
/// Closed-form Fourier transform of g.
double forcing_symbol(const ForcingSpec& fs, int dim, double r);
/// M_0 = amplitude * omega_N int g rho^{N-1} drho.
double spatial_mass(const ForcingSpec& fs, int dim);
/// M_f(t) = M_0 (1 + t)^{-gamma}.
double forcing_mass(const ForcingSpec& fs, int dim, double t);
/// amplitude * g as a RadialFunction on `grid`.
RadialFunction forcing_function(const ForcingSpec& fs, int dim, const RadialGrid& grid);

struct TimeIntegratedForcing {
    RadialFunction F;
    double m_infinity = 0.0;
};
/// F = int_0^inf f ds and M_inf; requires gamma > 1.
TimeIntegratedForcing time_integrated_forcing(const ForcingSpec& fs, int dim, const RadialGrid& grid);

struct TimeQuadDiagnostics {
    long panels = 0;
    int unconverged = 0;
};

/// T(r, t) = int_0^t (1+s)^{-gamma} (t-s)^{alpha-1} E_{alpha,alpha}(-r^{2beta} (t-s)^alpha) ds.
double duhamel_time_factor(const FracParams& params, double gamma, double r, double t,
                           double rel_tol = 1e-10, TimeQuadDiagnostics* diag = nullptr);
/// gamma = 0 closed form (1 - E_alpha(-r^{2beta} t^alpha)) / r^{2beta}.
double duhamel_time_factor_closed(const FracParams& params, double r, double t);

struct SolverOptions {
    TransformOptions transform;
    double time_rel_tol = 1e-10;
};

struct SolutionSlice {
    double t = 0.0;
    RadialFunction u;
    FracParams params;
    Exponents exps;
    ForcingSpec forcing;
    long time_panels = 0;
    int time_unconverged = 0;
    long transform_panels = 0;
    int transform_unconverged = 0;
};

/// Tabulated T(., t) over the spectral sampling range of `grid`.
RadialFunction time_factor_table(const FracParams& params, double gamma, double t, const RadialGrid& grid,
                                 const SolverOptions& opt = {}, TimeQuadDiagnostics* diag = nullptr);

/// u(., t) through its Fourier transform amplitude * g^(r) * T(r, t).
SolutionSlice solve_duhamel(const ForcingSpec& fs, const FracParams& params, double t,
                            const RadialGrid& grid, const SolverOptions& opt = {});

/// M(t) = (1/Gamma(alpha)) int_0^t M_f(s) (t-s)^{alpha-1} ds.
double solution_mass(const ForcingSpec& fs, const FracParams& params, double t);

/// int_0^t M_f(s) Y(., t-s) ds, with Fourier transform M_0 T(r, t).
RadialFunction outer_reference(const ForcingSpec& fs, const FracParams& params, double t,
                               const RadialGrid& grid, const SolverOptions& opt = {});

nlohmann::json to_json(const SolutionSlice& s);

}  // namespace fracasym
