#include "fracasym/potentials.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "fracasym/error.hpp"
#include "fracasym/parallel.hpp"
#include "fracasym/special.hpp"

namespace fracasym {

namespace {

constexpr double kPi = std::numbers::pi;
using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

void check_mu(double mu, int dim) {
    if (!(mu > 0.0 && mu < dim)) fail("domain", "riesz order mu must lie in (0, dim)");
}

// Replace the power tails of a symbol table by those of r^{-mu} times it.
PowerTail shift_tail(PowerTail t, double mu) {
    t.amplitude *= std::pow(t.anchor, -mu);
    t.exponent -= mu;
    return t;
}

// int_a^inf by pieces of doubling length until the contributions vanish.
template <class F>
double integrate_to_inf(F f, double a) {
    double total = 0.0;
    double lo = a, w = std::max(1.0, a);
    int empty = 0;
    for (int i = 0; i < 200; ++i) {
        const double piece = GK::integrate(f, lo, lo + w, 15, 1e-13);
        total += piece;
        lo += w;
        empty = piece == 0.0 ? empty + 1 : 0;
        if (empty >= 3 || (piece != 0.0 && std::abs(piece) <= 1e-16 * std::abs(total))) break;
        if (i > 4) w *= 2.0;
    }
    return total;
}

}  // namespace

double riesz_constant(double mu, int dim) {
    check_mu(mu, dim);
    return std::tgamma(0.5 * (dim - mu)) /
           (std::pow(kPi, 0.5 * dim) * std::pow(2.0, mu) * std::tgamma(0.5 * mu));
}

double riesz_kernel(double mu, int dim, double rho) {
    check_mu(mu, dim);
    if (!(rho > 0.0)) fail("domain", "riesz kernel is singular at the origin");
    return std::pow(rho, mu - dim);
}

RadialFunction spectral_table(const RadialFunction& g, int dim, const RadialGrid& out_grid,
                              const TransformOptions& opt, double floor_rel) {
    const SpectralSampling s = resolve_sampling(opt.sampling, out_grid);
    const int pts =
        std::max(64, static_cast<int>(std::ceil(std::log10(s.r_max / s.r_min) * s.per_decade)) + 1);
    const RadialGrid rg(s.r_min, s.r_max, pts);
    const auto x = rg.nodes();
    std::vector<double> v(pts, 0.0);
    // Evaluate in blocks of increasing r; stop once a whole block has underflowed.
    constexpr int kBlock = 64;
    double peak = 0.0;
    for (int b0 = 0; b0 < pts; b0 += kBlock) {
        const int b1 = std::min(pts, b0 + kBlock);
        parallel_for(b1 - b0, [&](std::size_t i) {
            v[b0 + i] = radial_fourier_forward_at(g, dim, x[b0 + i], opt);
        }, opt.threads);
        bool all_small = true;
        for (int i = b0; i < b1; ++i) peak = std::max(peak, std::abs(v[i]));
        for (int i = b0; i < b1; ++i) all_small = all_small && std::abs(v[i]) < floor_rel * peak;
        if (all_small && peak > 0.0) break;
    }
    // Zero everything from the first node under the floor onward.
    for (int i = 0; i < pts; ++i) {
        if (std::abs(v[i]) < floor_rel * peak) {
            std::fill(v.begin() + i, v.end(), 0.0);
            break;
        }
    }
    return RadialFunction(rg, std::move(v));
}

RadialFunction riesz_potential(const RadialFunction& g, double mu, int dim, const RadialGrid& grid,
                               const TransformOptions& opt) {
    check_mu(mu, dim);
    const RadialFunction ghat = spectral_table(g, dim, grid, opt);
    std::vector<double> v = ghat.samples();
    const auto& r = ghat.nodes();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= std::pow(r[i], -mu);
    const RadialFunction sym(ghat.grid(), std::move(v), shift_tail(ghat.inner_tail(), mu),
                             shift_tail(ghat.outer_tail(), mu));
    return radial_fourier_inverse_table(sym, dim, grid, opt).scaled(1.0 / riesz_constant(mu, dim));
}

RadialFunction riesz_potential(const RadialFunction& g, double mu, int dim, const TransformOptions& opt) {
    return riesz_potential(g, mu, dim, g.grid(), opt);
}

RadialFunction riesz_potential_symbol(const std::function<double(double)>& ghat, double mu, int dim,
                                      const RadialGrid& grid, const TransformOptions& opt) {
    check_mu(mu, dim);
    const SpectralSampling s = resolve_sampling(opt.sampling, grid);
    HankelIntegrand in;
    in.f = [&](double r) { return ghat(r) * std::pow(r, -mu); };
    in.breaks = geometric_breaks(s);
    // ghat is flat below the sampling range, leaving the r^{-mu} singularity.
    in.r_inner = s.r_min;
    in.inner_amplitude = ghat(s.r_min) * std::pow(s.r_min, -mu);
    in.inner_exponent = -mu;
    return radial_fourier_inverse_integrand(in, dim, grid, opt).scaled(1.0 / riesz_constant(mu, dim));
}

double radial_mass(const std::function<double(double)>& g, int dim) {
    auto f = [&](double s) { return g(s) * std::pow(s, dim - 1); };
    const double inner = GK::integrate(f, 0.0, 1.0, 15, 1e-13);
    return sphere_area(dim) * (inner + integrate_to_inf(f, 1.0));
}

double riesz_remainder_at(const std::function<double(double)>& g, double mass, double mu, int dim,
                          double rho) {
    check_mu(mu, dim);
    if (!(rho > 0.0)) fail("domain", "remainder requires rho > 0");
    const double e = 0.5 * (mu - dim);
    const double base = std::pow(rho, mu - dim);
    if (mu == 2.0 && dim >= 3) {
        // Spherical means of E_2 equal max(rho, s)^{2-N}.
        auto f = [&](double s) {
            const double d = std::pow(s, 2.0 - dim) - base;
            return g(s) * std::pow(s, dim - 1) * d;
        };
        const double outside = integrate_to_inf(f, rho);
        // Mass defect: M is given, the convolution integrates g itself.
        return sphere_area(dim) * outside + (radial_mass(g, dim) - mass) * base;
    }
    // Spherical mean of |x - y|^{mu-N} - |x|^{mu-N} over |y| = s.
    boost::math::quadrature::tanh_sinh<double> ts;
    auto mean_diff = [&](double s) {
        if (dim == 1) {
            auto d = [&](double z) { return std::expm1(e * std::log1p(z)) * base; };
            const double u1 = (s * s - 2.0 * rho * s) / (rho * rho);
            const double u2 = (s * s + 2.0 * rho * s) / (rho * rho);
            return 0.5 * (d(u1) + d(u2));
        }
        auto h = [&](double phi) {
            const double c = std::cos(phi);
            const double u = (s * s - 2.0 * rho * s * c) / (rho * rho);
            if (u <= -1.0) return 0.0;
            return std::expm1(e * std::log1p(u)) * base * std::pow(std::sin(phi), dim - 2);
        };
        const double w = ts.integrate(h, 0.0, kPi);
        const double norm = std::sqrt(kPi) * std::tgamma(0.5 * (dim - 1)) / std::tgamma(0.5 * dim);
        return w / norm;
    };
    auto f = [&](double s) { return g(s) * std::pow(s, dim - 1) * mean_diff(s); };
    const double inside = ts.integrate(f, 0.0, rho);
    const double outside = integrate_to_inf(f, rho);
    return sphere_area(dim) * (inside + outside) + (radial_mass(g, dim) - mass) * base;
}

ConvergenceReport riesz_tail_check(const std::function<double(double)>& g, double mu, int dim, double p,
                                   double nu, double mu_outer, const std::vector<double>& radii,
                                   double tolerance) {
    check_mu(mu, dim);
    if (!(nu > 0.0 && mu_outer > nu)) fail("domain", "annulus requires 0 < nu < mu_outer");
    if (!(p >= 1.0)) fail("domain", "p must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    const double mass = radial_mass(g, dim);
    ConvergenceReport rep;
    rep.theorem = "riesz-tail";
    rep.params = {{"mu", mu}, {"dim", dim}};
    rep.forcing = {{"mass", mass}};
    rep.p = p;
    rep.scale = {{"nu", nu}, {"mu_outer", mu_outer}};
    rep.tolerance = tolerance;
    const double expo = (std::isinf(p) ? dim : dim * (1.0 - 1.0 / p)) - mu;
    for (double R : radii) {
        auto rem = [&](double rho) { return riesz_remainder_at(g, mass, mu, dim, rho); };
        const double err = lp_norm_annulus(rem, {}, p, dim, nu * R, mu_outer * R);
        rep.checkpoints.push_back(R);
        rep.raw_errors.push_back(err);
        rep.normalized_errors.push_back(std::pow(R, expo) * err);
    }
    rep.truncation_radius = radii.empty() ? 0.0 : mu_outer * radii.back();
    finalize(rep);
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

ConvergenceReport riesz_tail_check(const RadialFunction& g, double mu, int dim, double p, double nu,
                                   double mu_outer, const std::vector<double>& radii, double tolerance) {
    for (double R : radii)
        if (nu * R < g.grid().rho_min || mu_outer * R > g.grid().rho_max)
            fail("coverage", "annulus outside the grid of g");
    return riesz_tail_check([&g](double s) { return g(s); }, mu, dim, p, nu, mu_outer, radii, tolerance);
}

}  // namespace fracasym
