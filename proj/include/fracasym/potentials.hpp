#pragma once

#include <functional>
#include <vector>

#include "fracasym/radial.hpp"
#include "fracasym/radialtransform.hpp"
#include "fracasym/report.hpp"

namespace fracasym {

/// Gamma((N-mu)/2) / (pi^{N/2} 2^mu Gamma(mu/2)); the inverse transform of |w|^{-mu} is c_mu |x|^{mu-N}.
double riesz_constant(double mu, int dim);

/// E_mu(rho) = rho^{mu-N}.
double riesz_kernel(double mu, int dim, double rho);

/// Forward transform of g on a spectral grid wide enough for an output grid;
/// values below `floor_rel` times the peak are treated as underflow and zeroed.
RadialFunction spectral_table(const RadialFunction& g, int dim, const RadialGrid& out_grid,
                              const TransformOptions& opt = {}, double floor_rel = 1e-13);

/// I_mu[g] computed as (1/c_mu) F^{-1}(r^{-mu} g^(r)) on `grid` (default: g's grid).
RadialFunction riesz_potential(const RadialFunction& g, double mu, int dim,
                               const TransformOptions& opt = {});
RadialFunction riesz_potential(const RadialFunction& g, double mu, int dim, const RadialGrid& grid,
                               const TransformOptions& opt = {});

/// Same from an analytic transform ghat.
RadialFunction riesz_potential_symbol(const std::function<double(double)>& ghat, double mu, int dim,
                                      const RadialGrid& grid, const TransformOptions& opt = {});

/// (I_mu[g] - M E_mu)(rho) by radial convolution; M is the mass of g.
/// For mu = 2 the shell theorem makes the kernel vanish for |y| < rho, so the
/// value carries full relative precision even when it is exponentially small.
double riesz_remainder_at(const std::function<double(double)>& g, double mass, double mu, int dim,
                          double rho);

/// omega_N int_0^inf g(s) s^{N-1} ds by adaptive quadrature.
double radial_mass(const std::function<double(double)>& g, int dim);

/// Normalized errors R^{N(1-1/p)-mu} ||I_mu[g] - M E_mu||_{L^p(nu R < |x| < mu_outer R)}.
ConvergenceReport riesz_tail_check(const std::function<double(double)>& g, double mu, int dim, double p,
                                   double nu, double mu_outer, const std::vector<double>& radii,
                                   double tolerance = 5e-2);
/// Same for a tabulated g; the annuli must lie inside its grid.
ConvergenceReport riesz_tail_check(const RadialFunction& g, double mu, int dim, double p, double nu,
                                   double mu_outer, const std::vector<double>& radii,
                                   double tolerance = 5e-2);

}  // namespace fracasym
