#include "fracasym/solver.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracasym/error.hpp"
#include "fracasym/parallel.hpp"
#include "fracasym/special.hpp"

namespace fracasym {

namespace {

constexpr double kPi = std::numbers::pi;
using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

// Gauss-Kronrod on [a, b] mapped to [0, 1]; boost's error estimate is not scale-free
// in the interval length, so tiny pieces would otherwise never report convergence.
template <class F>
double gk_unit(F f, double a, double b, unsigned depth, double tol, double* err, double* l1) {
    const double w = b - a;
    auto g = [&](double u) { return f(a + w * u) * w; };
    return GK::integrate(g, 0.0, 1.0, depth, tol, err, l1);
}

// Integrates f over consecutive pieces. A single Gauss-Kronrod pass estimates the
// total; each piece is then refined until its error is below rel_tol of that total.
template <class F>
double gk_pieces(F f, const std::vector<double>& cuts, double rel_tol, TimeQuadDiagnostics* diag) {
    const std::size_t m = cuts.size() - 1;
    std::vector<double> v(m), err(m), l1(m);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        v[i] = gk_unit(f, cuts[i], cuts[i + 1], 0, 0.0, &err[i], &l1[i]);
        total += std::abs(v[i]);
    }
    const double target = rel_tol * total;
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (err[i] > target / m && l1[i] > 0.0) {
            const double tol = std::max(rel_tol, target / (m * l1[i]));
            v[i] = gk_unit(f, cuts[i], cuts[i + 1], 12, tol, &err[i], &l1[i]);
            if (diag && err[i] > 10.0 * std::max(target / m, tol * l1[i])) ++diag->unconverged;
        }
        sum += v[i];
    }
    if (diag) diag->panels += static_cast<long>(m);
    return sum;
}

}  // namespace

std::string to_string(ForcingSpec::Family f) {
    switch (f) {
        case ForcingSpec::Family::Gaussian: return "gaussian";
        case ForcingSpec::Family::Bump: return "bump";
        case ForcingSpec::Family::HeavyTail: return "heavy-tail";
    }
    return "?";
}

ForcingSpec::Family parse_family(const std::string& name) {
    if (name == "gaussian") return ForcingSpec::Family::Gaussian;
    if (name == "bump") return ForcingSpec::Family::Bump;
    if (name == "heavy-tail" || name == "heavytail" || name == "heavy_tail") return ForcingSpec::Family::HeavyTail;
    fail("config", "unknown forcing family '" + name + "' (gaussian, bump, heavy-tail)");
}

void validate(const ForcingSpec& fs) {
    if (!std::isfinite(fs.amplitude)) fail("domain", "forcing amplitude must be finite");
    if (!std::isfinite(fs.gamma)) fail("domain", "gamma must be finite");
    if (fs.family == ForcingSpec::Family::Gaussian && !(fs.width > 0.0))
        fail("domain", "gaussian width must be positive");
    if (fs.family == ForcingSpec::Family::Bump && !(fs.radius > 0.0))
        fail("domain", "bump radius must be positive");
}

nlohmann::json to_json(const ForcingSpec& fs) {
    nlohmann::json j = {{"family", to_string(fs.family)}, {"gamma", fs.gamma}, {"amplitude", fs.amplitude}};
    if (fs.family == ForcingSpec::Family::Gaussian) j["width"] = fs.width;
    if (fs.family == ForcingSpec::Family::Bump) j["radius"] = fs.radius;
    return j;
}

double forcing_profile(const ForcingSpec& fs, int dim, double rho) {
    switch (fs.family) {
        case ForcingSpec::Family::Gaussian: return std::exp(-rho * rho / (fs.width * fs.width));
        case ForcingSpec::Family::Bump: {
            const double s = 1.0 - rho * rho / (fs.radius * fs.radius);
            return s > 0.0 ? s * s : 0.0;
        }
        case ForcingSpec::Family::HeavyTail: return std::pow(1.0 + rho * rho, -0.5 * (dim + 1));
    }
    return 0.0;
}

double forcing_symbol(const ForcingSpec& fs, int dim, double r) {
    switch (fs.family) {
        case ForcingSpec::Family::Gaussian: {
            const double w = fs.width;
            return std::pow(kPi * w * w, 0.5 * dim) * std::exp(-0.25 * w * w * r * r);
        }
        case ForcingSpec::Family::Bump: {
            // (1 - |x|^2)_+^delta has transform 2^delta Gamma(delta+1) (2pi)^{N/2} |w|^{-N/2-delta} J_{N/2+delta}.
            const int n = (dim - 1) / 2 + 2;
            const double R = fs.radius;
            return std::pow(R, dim) * 8.0 * std::pow(2.0 * kPi, 0.5 * dim) * std::sqrt(2.0 / kPi) *
                   spherical_bessel_j_scaled(n, R * r);
        }
        case ForcingSpec::Family::HeavyTail:
            // Poisson kernel pair.
            return std::pow(kPi, 0.5 * (dim + 1)) / std::tgamma(0.5 * (dim + 1)) * std::exp(-r);
    }
    return 0.0;
}

double spatial_mass(const ForcingSpec& fs, int dim) { return fs.amplitude * forcing_symbol(fs, dim, 0.0); }

double forcing_mass(const ForcingSpec& fs, int dim, double t) {
    if (!(t >= 0.0)) fail("domain", "t must be nonnegative");
    return spatial_mass(fs, dim) * std::pow(1.0 + t, -fs.gamma);
}

RadialFunction forcing_function(const ForcingSpec& fs, int dim, const RadialGrid& grid) {
    const auto x = grid.nodes();
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = fs.amplitude * forcing_profile(fs, dim, x[i]);
    PowerTail in{x.front(), v.front(), 0.0, 0.0};
    PowerTail out;
    out.anchor = x.back();
    if (fs.family == ForcingSpec::Family::HeavyTail) {
        out.amplitude = v.back();
        out.exponent = -(dim + 1.0);
    }
    return RadialFunction(grid, std::move(v), in, out);
}

TimeIntegratedForcing time_integrated_forcing(const ForcingSpec& fs, int dim, const RadialGrid& grid) {
    if (!(fs.gamma > 1.0)) fail("divergence", "time-integrated forcing requires gamma > 1");
    const double c = 1.0 / (fs.gamma - 1.0);
    return {forcing_function(fs, dim, grid).scaled(c), spatial_mass(fs, dim) * c};
}

double duhamel_time_factor(const FracParams& params, double gamma, double r, double t, double rel_tol,
                           TimeQuadDiagnostics* diag) {
    if (!(t >= 0.0)) fail("domain", "t must be nonnegative");
    if (!(r >= 0.0)) fail("domain", "r must be nonnegative");
    if (t == 0.0) return 0.0;
    const double a = params.alpha;
    const double lam = r > 0.0 ? std::pow(r, 2.0 * params.beta) : 0.0;
    const MLParams ml{a, a};
    const double half = 0.5 * t;

    // s in [0, t/2]: smooth, (1 + s) graded geometrically.
    auto fa = [&](double s) {
        const double d = t - s;
        return std::pow(1.0 + s, -gamma) * std::pow(d, a - 1.0) * mittag_leffler(ml, -lam * std::pow(d, a));
    };
    std::vector<double> ca{0.0};
    for (double s1 = 3.0; s1 < half; s1 = 4.0 * s1 + 3.0) ca.push_back(s1);
    ca.push_back(half);

    // s in [t/2, t] through tau = (t - s)^alpha, graded towards tau = 0 on the kernel scale.
    auto fb = [&](double tau) {
        const double s = t - std::pow(tau, 1.0 / a);
        return std::pow(1.0 + s, -gamma) * mittag_leffler(ml, -lam * tau) / a;
    };
    const double tau_max = std::pow(half, a);
    const double tau_lo = 1e-3 * std::min(tau_max, lam > 0.0 ? 1.0 / lam : tau_max);
    std::vector<double> cb{tau_max};
    while (cb.back() > tau_lo) cb.push_back(0.25 * cb.back());
    cb.push_back(0.0);
    std::reverse(cb.begin(), cb.end());

    // Both halves share one error budget.
    const double ra = gk_pieces(fa, ca, 1.0, nullptr), rb = gk_pieces(fb, cb, 1.0, nullptr);
    const double scale = std::abs(ra) + std::abs(rb);
    const double wa = scale > 0.0 ? std::max(std::abs(ra) / scale, 1e-300) : 1.0;
    const double wb = scale > 0.0 ? std::max(std::abs(rb) / scale, 1e-300) : 1.0;
    const double total = gk_pieces(fa, ca, std::min(1e-3, rel_tol / wa), diag) +
                         gk_pieces(fb, cb, std::min(1e-3, rel_tol / wb), diag);
    return total;
}

double duhamel_time_factor_closed(const FracParams& params, double r, double t) {
    if (!(t >= 0.0 && r >= 0.0)) fail("domain", "r and t must be nonnegative");
    const double a = params.alpha;
    const double ta = std::pow(t, a);
    const double x = std::pow(r, 2.0 * params.beta) * ta;
    if (x < 0.5) {
        // t^alpha E_{alpha,alpha+1}(-x), summed directly.
        double sum = 0.0, xp = 1.0;
        for (int k = 0; k < 80; ++k) {
            const double term = xp * rgamma(a * (k + 1) + 1.0);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
            xp *= -x;
        }
        return ta * sum;
    }
    return (1.0 - mittag_leffler({a, 1.0}, -x)) / std::pow(r, 2.0 * params.beta);
}

RadialFunction time_factor_table(const FracParams& params, double gamma, double t, const RadialGrid& grid,
                                 const SolverOptions& opt, TimeQuadDiagnostics* diag) {
    validate(params);
    if (!(t > 0.0)) fail("domain", "t must be positive");
    const SpectralSampling s = resolve_sampling(opt.transform.sampling, grid);
    const int pts =
        std::max(64, static_cast<int>(std::ceil(std::log10(s.r_max / s.r_min) * s.per_decade)) + 1);
    const RadialGrid rg(s.r_min, s.r_max, pts);
    const auto x = rg.nodes();
    std::vector<double> v(pts);
    std::vector<TimeQuadDiagnostics> d(pts);
    parallel_for(pts, [&](std::size_t i) {
        v[i] = duhamel_time_factor(params, gamma, x[i], t, opt.time_rel_tol, &d[i]);
    }, opt.transform.threads);
    if (diag) {
        for (const auto& di : d) {
            diag->panels += di.panels;
            diag->unconverged += di.unconverged;
        }
    }
    return RadialFunction(rg, std::move(v));
}

SolutionSlice solve_duhamel(const ForcingSpec& fs, const FracParams& params, double t, const RadialGrid& grid,
                            const SolverOptions& opt) {
    validate(params);
    validate(fs);
    if (!(t > 0.0)) fail("domain", "t must be positive");
    SolutionSlice out;
    out.t = t;
    out.params = params;
    out.exps = derive_exponents(params);
    out.forcing = fs;
    const int dim = params.dim;
    if (fs.amplitude == 0.0) {
        out.u = RadialFunction(grid, std::vector<double>(grid.points, 0.0), PowerTail{}, PowerTail{});
        return out;
    }
    TimeQuadDiagnostics td;
    const RadialFunction T = time_factor_table(params, fs.gamma, t, grid, opt, &td);
    out.time_panels = td.panels;
    out.time_unconverged = td.unconverged;

    HankelIntegrand in;
    in.f = [&fs, &T, dim](double r) { return fs.amplitude * forcing_symbol(fs, dim, r) * T(r); };
    in.breaks = T.nodes();
    if (fs.family == ForcingSpec::Family::Bump) in.oscillation = fs.radius;
    TransformDiagnostics diag;
    out.u = radial_fourier_inverse_integrand(in, dim, grid, opt.transform, &diag);
    out.transform_panels = diag.panels;
    out.transform_unconverged = diag.unconverged;
    return out;
}

double solution_mass(const ForcingSpec& fs, const FracParams& params, double t) {
    validate(params);
    validate(fs);
    if (!(t >= 0.0)) fail("domain", "t must be nonnegative");
    if (t == 0.0 || fs.amplitude == 0.0) return 0.0;
    // At r = 0 the kernel factor is E_{alpha,alpha}(0) = 1/Gamma(alpha).
    return spatial_mass(fs, params.dim) * duhamel_time_factor(params, fs.gamma, 0.0, t, 1e-12);
}

RadialFunction outer_reference(const ForcingSpec& fs, const FracParams& params, double t, const RadialGrid& grid,
                               const SolverOptions& opt) {
    validate(params);
    validate(fs);
    if (!(t > 0.0)) fail("domain", "t must be positive");
    const double m0 = spatial_mass(fs, params.dim);
    if (m0 == 0.0) return RadialFunction(grid, std::vector<double>(grid.points, 0.0), PowerTail{}, PowerTail{});
    const RadialFunction T = time_factor_table(params, fs.gamma, t, grid, opt);
    // T(r, t) ~ (1 + t)^{-gamma} r^{-2beta} for large r.
    const RadialFunction h = radial_fourier_inverse_split([&T](double r) { return T(r); },
                                                          std::pow(1.0 + t, -fs.gamma), 2.0 * params.beta,
                                                          params.dim, grid, opt.transform);
    return h.scaled(m0);
}

nlohmann::json to_json(const SolutionSlice& s) {
    const RadialGrid& g = s.u.grid();
    return {{"t", s.t},
            {"alpha", s.params.alpha},
            {"beta", s.params.beta},
            {"dim", s.params.dim},
            {"forcing", to_json(s.forcing)},
            {"grid", {{"rho_min", g.rho_min}, {"rho_max", g.rho_max}, {"points", g.points}}},
            {"quadrature",
             {{"time_panels", s.time_panels},
              {"time_unconverged", s.time_unconverged},
              {"transform_panels", s.transform_panels},
              {"transform_unconverged", s.transform_unconverged}}},
            {"convention", kConvention}};
}

}  // namespace fracasym
