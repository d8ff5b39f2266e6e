#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fracasym/radial.hpp"

namespace fracasym {

/// Spectral sampling of a symbol before transformation. Zero bounds are chosen
/// from the output grid: [1e-3/rho_max, 1e3/rho_min].
struct SpectralSampling {
    double r_min = 0.0;
    double r_max = 0.0;
    int per_decade = 200;
};

struct TransformOptions {
    double rel_tol = 1e-11;
    double abs_floor = 1e-15;  ///< acceleration stops at this fraction of max |partial sum|
    int max_panels = 400000;
    int threads = 0;
    double noise_floor = 64 * 2.220446049250313e-16;  ///< results below this times sum|panel| are zeroed
    SpectralSampling sampling;
};

struct TransformDiagnostics {
    long panels = 0;           ///< total panels over all output nodes
    int unconverged = 0;       ///< nodes where acceleration did not settle
};

/// Integrand description for the core oscillatory integral
///   I(k) = int_0^inf f(r) r^{N-1} j_n(k r)/(k r)^n dr,  n = (N-3)/2.
struct HankelIntegrand {
    std::function<double(double)> f;
    std::function<long double(long double)> f_ext;  ///< optional extended-precision f, preferred if set
    std::vector<double> breaks;      ///< sorted points of reduced smoothness (table nodes)
    double inner_amplitude = 0.0;    ///< f(r) = A (r/r_inner)^q on (0, r_inner] if r_inner > 0
    double inner_exponent = 0.0;
    double inner_amplitude2 = 0.0;   ///< optional second term B (r/r_inner)^{q2} on (0, r_inner]
    double inner_exponent2 = 0.0;
    double r_inner = 0.0;
    double support_end = kInf;       ///< f == 0 beyond this radius
    double oscillation = 0.0;        ///< angular frequency of f's own oscillation (0 if none)
};

/// Core radial integral at one output point; (2pi)^{-N/2}-type prefactors not applied.
double hankel_core(const HankelIntegrand& in, int dim, double k, const TransformOptions& opt,
                   long* panels = nullptr, bool* converged = nullptr);

/// Integrand for a tabulated radial function (symbol table or spatial profile).
HankelIntegrand integrand_from_table(const RadialFunction& table);

/// Tabulate a symbol on a log grid, truncating where it underflows.
RadialFunction tabulate_symbol(const std::function<double(double)>& symbol, double r_min,
                               double r_max, int per_decade, int threads = 0);

SpectralSampling resolve_sampling(const SpectralSampling& s, const RadialGrid& out);

/// Quadrature break points for an analytic symbol over the sampling range.
std::vector<double> geometric_breaks(const SpectralSampling& s);

/// Evaluates `symbol` directly inside the quadrature (no tabulation).
/// h(rho) = (2pi)^{-N/2} rho^{1-N/2} int symbol(r) J_{N/2-1}(r rho) r^{N/2} dr on the grid nodes.
RadialFunction radial_fourier_inverse(const std::function<double(double)>& symbol, int dim,
                                      const RadialGrid& grid, const TransformOptions& opt = {},
                                      TransformDiagnostics* diag = nullptr);

/// Extended-precision symbol: resolves h down to ~1e-19 of its peak.
RadialFunction radial_fourier_inverse_ext(const std::function<long double(long double)>& symbol, int dim,
                                      const RadialGrid& grid, const TransformOptions& opt = {},
                                      TransformDiagnostics* diag = nullptr);

/// Inverse transform of an already-tabulated symbol.
RadialFunction radial_fourier_inverse_table(const RadialFunction& symbol_table, int dim,
                                            const RadialGrid& grid, const TransformOptions& opt = {},
                                            TransformDiagnostics* diag = nullptr);

/// Inverse transform of a general integrand (same normalization as above).
RadialFunction radial_fourier_inverse_integrand(const HankelIntegrand& in, int dim,
                                                const RadialGrid& grid, const TransformOptions& opt = {},
                                                TransformDiagnostics* diag = nullptr);

/// Inverse transform of (1 + r^2)^{-mu/2}.
double bessel_potential_kernel(double mu, int dim, double rho);

/// Inverse transform with the algebraic tail c r^{-mu} removed before quadrature
/// (as c (1 + r^2)^{-mu/2}) and restored through the Bessel potential kernel.
RadialFunction radial_fourier_inverse_split(const std::function<double(double)>& symbol,
                                            double tail_coeff, double mu, int dim,
                                            const RadialGrid& grid, const TransformOptions& opt = {});

/// h^(r) = (2pi)^{N/2} r^{1-N/2} int h(rho) J_{N/2-1}(r rho) rho^{N/2} drho.
double radial_fourier_forward_at(const RadialFunction& h, int dim, double r,
                                 const TransformOptions& opt = {});

/// Forward transform tabulated on a spectral grid.
RadialFunction radial_fourier_forward(const RadialFunction& h, int dim, const RadialGrid& r_grid,
                                      const TransformOptions& opt = {});

/// Prefactors: inverse = kInverse * I(rho), forward = kForward * I(r).
double inverse_prefactor(int dim);
double forward_prefactor(int dim);

/// Wynn epsilon extrapolation of a partial-sum sequence.
double wynn_epsilon(const double* s, int n);

}  // namespace fracasym
