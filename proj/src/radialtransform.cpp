#include "fracasym/radialtransform.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

#include "fracasym/error.hpp"
#include "fracasym/parallel.hpp"
#include "fracasym/potentials.hpp"
#include "fracasym/special.hpp"

namespace fracasym {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long double kPiL = std::numbers::pi_v<long double>;
constexpr int kWynnWindow = 31;
using GL10 = boost::math::quadrature::gauss<long double, 10>;
using GL20 = boost::math::quadrature::gauss<long double, 20>;

void check_dim(int dim) {
    if (dim < 1 || dim % 2 == 0) fail("domain", "radial transforms require odd dim");
}

// Panel sums cancel by many orders of magnitude, so quadrature runs in extended precision.
using Real = long double;

// j_n(z)/z^n by its power series.
Real kernel_series(int n, Real z) {
    Real dfact = 1.0L;
    for (int j = 1; j <= 2 * n + 1; j += 2) dfact *= j;
    Real term = 1.0L / dfact, sum = term;
    const Real h = -0.5L * z * z;
    for (int k = 1; k < 60; ++k) {
        term *= h / (k * (2.0L * n + 2.0L * k + 1.0L));
        sum += term;
        if (std::abs(term) < 1e-21L * std::abs(sum)) break;
    }
    return sum;
}

// j_n(z)/z^n (n = -1 means cos z, dim = 1) at z = q pi/2 + x. The trigonometric
// factors are taken from the small offset x so that rounding of z does not
// enter the phase.
Real kernel_phase(int n, Real z, long q, Real x) {
    if (n >= 0 && z < n + 2.0L) return kernel_series(n, z);
    const Real sx = std::sin(x), cx = std::cos(x);
    Real s = 0.0, c = 0.0;
    switch (((q % 4) + 4) % 4) {
        case 0: s = sx; c = cx; break;
        case 1: s = cx; c = -sx; break;
        case 2: s = -sx; c = -cx; break;
        default: s = -cx; c = sx; break;
    }
    if (n < 0) return c;
    Real j0 = s / z;
    if (n == 0) return j0;
    Real j1 = s / (z * z) - c / z;
    for (int m = 1; m < n; ++m) {
        const Real j2 = (2.0L * m + 1.0L) / z * j1 - j0;
        j0 = j1;
        j1 = j2;
    }
    return j1 / std::pow(z, n);
}

template <class T>
T wynn(const T* s, int n) {
    if (n <= 0) return 0.0;
    if (n < 3) return s[n - 1];
    std::vector<T> prev(n + 1, 0.0), cur(s, s + n), next;
    T best = s[n - 1];
    for (int col = 1; col < n; ++col) {
        const int m = n - col;
        next.assign(m, T(0));
        for (int i = 0; i < m; ++i) {
            const T d = cur[i + 1] - cur[i];
            if (d == 0.0) return (col % 2 == 1) ? cur[m] : best;
            next[i] = prev[i + 1] + T(1) / d;
            if (!std::isfinite(next[i])) return best;
        }
        if (col % 2 == 0) best = next[m - 1];
        prev.swap(cur);
        cur.swap(next);
    }
    return best;
}

}  // namespace

double wynn_epsilon(const double* s, int n) { return wynn(s, n); }

double hankel_core(const HankelIntegrand& in, int dim, double k, const TransformOptions& opt,
                   long* panels, bool* converged) {
    check_dim(dim);
    if (!(k > 0.0)) fail("domain", "transform evaluation point must be positive");
    const int n = (dim - 3) / 2;  // -1 for dim = 1
    const double wpow = dim - 1.0;

    double total0 = 0.0;
    double start = 0.0;
    if (in.r_inner > 0.0) {
        // Power-law region near the origin: termwise integration of the kernel series.
        start = std::min(in.r_inner, 0.5 / k);
        double dfact = 1.0;
        for (int j = 1; j <= 2 * n + 1; j += 2) dfact *= j;
        const double ks2 = (k * start) * (k * start);
        auto term_integral = [&](double amp, double q) {
            if (amp == 0.0) return 0.0;
            if (!(q + dim > 0.0)) fail("integrability", "integrand not integrable at the origin");
            double coef = 1.0 / dfact, sum = 0.0, zpow = 1.0;
            for (int j = 0; j < 40; ++j) {
                if (j > 0) {
                    coef *= -0.5 / (j * (2.0 * n + 2.0 * j + 1.0));
                    zpow *= ks2;
                }
                const double term = coef * zpow / (q + dim + 2.0 * j);
                sum += term;
                if (std::abs(term) < 1e-18 * std::abs(sum)) break;
            }
            return amp * std::pow(start / in.r_inner, q) * std::pow(start, dim) * sum;
        };
        total0 = term_integral(in.inner_amplitude, in.inner_exponent) +
                 term_integral(in.inner_amplitude2, in.inner_exponent2);
    }

    // Panel j covers k r in [(j + n/2) pi, (j + 1 + n/2) pi], bracketing the
    // asymptotic zeros of the kernel. Inside a panel r = base + t.
    const Real kr = k;
    const double wmax = in.oscillation > 0.0 ? 0.5 * kPi / in.oscillation : kInf;
    auto integrate_panel = [&](long q, Real base, Real t_lo, Real t_hi) {
        auto integrand = [&](Real t) -> Real {
            const Real r = base + t;
            if (r <= 0.0L) return 0.0L;
            const Real fv = in.f_ext ? in.f_ext(r) : static_cast<Real>(in.f(static_cast<double>(r)));
            if (fv == 0.0L) return 0.0L;
            return fv * std::pow(r, static_cast<Real>(wpow)) * kernel_phase(n, kr * r, q, kr * t);
        };
        std::vector<Real> cuts{t_lo};
        const Real r_lo = base + t_lo, r_hi = base + t_hi;
        for (auto it = std::upper_bound(in.breaks.begin(), in.breaks.end(), static_cast<double>(r_lo));
             it != in.breaks.end() && *it < r_hi; ++it) {
            const Real t = *it - base;
            if (t > cuts.back()) cuts.push_back(t);
        }
        if (t_hi > cuts.back()) cuts.push_back(t_hi);
        Real acc = 0.0L;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const Real ta = cuts[i], tb = cuts[i + 1];
            const Real ra = base + ta, rb = base + tb;
            // Geometric refinement keeps each piece within a factor 2 in r.
            int m = 1;
            const bool geometric = ra > 0.0L && rb / ra > 2.0L;
            if (geometric) m = static_cast<int>(std::ceil(std::log2(static_cast<double>(rb / ra))));
            if ((tb - ta) / m > wmax) m = static_cast<int>(std::ceil(static_cast<double>((tb - ta) / wmax)));
            Real y0 = ta;
            const Real ratio = geometric ? std::pow(rb / ra, 1.0L / m) : 1.0L;
            for (int p = 0; p < m; ++p) {
                Real y1 = tb;
                if (p < m - 1) y1 = geometric ? ra * std::pow(ratio, p + 1) - base : ta + (tb - ta) * (p + 1) / m;
                acc += (ra <= 0.0L && p == 0) ? GL20::integrate(integrand, y0, y1)
                                              : GL10::integrate(integrand, y0, y1);
                y0 = y1;
            }
        }
        return acc;
    };

    const Real half = 0.5L * n;
    const Real width = kPiL / kr;
    long j = static_cast<long>(std::floor(k * start / kPi - 0.5 * n));
    std::vector<Real> partial;
    partial.reserve(1024);
    std::vector<Real> est;
    Real total = total0;
    Real maxabs = std::abs(total);
    Real magnitude = std::abs(total);  // sum of |panel| for the resolution floor
    bool done = false;
    long count = 0;
    for (; count < opt.max_panels; ++j, ++count) {
        const Real base = (j + half) * width;
        const Real t_lo = std::max(0.0L, start - base);
        if (base + t_lo >= in.support_end) {
            done = true;
            break;
        }
        const bool last = base + width >= in.support_end;
        const Real t_hi = last ? in.support_end - base : width;
        const Real piece = integrate_panel(2 * j + n, base, t_lo, t_hi);
        total += piece;
        magnitude += std::abs(piece);
        partial.push_back(total);
        maxabs = std::max(maxabs, std::abs(total));
        if (last) {
            done = true;
            break;
        }
        const int m = static_cast<int>(partial.size());
        const int w = std::min(m, kWynnWindow);
        est.push_back(wynn(partial.data() + (m - w), w));
        const int e = static_cast<int>(est.size());
        if (e >= 3) {
            const Real tol = std::max(opt.rel_tol * std::abs(est[e - 1]), opt.abs_floor * maxabs);
            if (std::abs(est[e - 1] - est[e - 2]) <= tol && std::abs(est[e - 2] - est[e - 3]) <= tol) {
                total = est[e - 1];
                done = true;
                break;
            }
        }
    }
    if (!done && !est.empty()) total = est.back();
    if (panels) *panels += count + 1;
    if (converged) *converged = done;
    // Below the rounding level of the panel sums the value is indistinguishable from zero.
    if (std::abs(total) < opt.noise_floor * magnitude) return 0.0;
    return static_cast<double>(total);
}

double bessel_potential_kernel(double mu, int dim, double rho) {
    if (!(mu > 0.0) || !(rho > 0.0)) fail("domain", "bessel potential needs mu > 0 and rho > 0");
    const double nu = 0.5 * (dim - mu);
    return std::pow(2.0 * kPi, -0.5 * dim) * std::pow(2.0, 1.0 - 0.5 * mu) / std::tgamma(0.5 * mu) *
           std::pow(rho, -nu) * boost::math::cyl_bessel_k(std::abs(nu), rho);
}

double inverse_prefactor(int dim) { return std::pow(2.0 * kPi, -0.5 * dim) * std::sqrt(2.0 / kPi); }
double forward_prefactor(int dim) { return std::pow(2.0 * kPi, 0.5 * dim) * std::sqrt(2.0 / kPi); }

HankelIntegrand integrand_from_table(const RadialFunction& table) {
    HankelIntegrand in;
    in.f = [&table](double r) { return table(r); };
    in.breaks = table.nodes();
    in.r_inner = table.nodes().front();
    in.inner_amplitude = table.inner_tail().amplitude;
    in.inner_exponent = table.inner_tail().exponent;
    // A bounded profile is modelled as a + b (r/r_inner)^gamma below the grid,
    // gamma taken from successive differences of the first samples.
    const auto& v = table.samples();
    if (v.size() >= 8 && std::abs(in.inner_exponent) < 0.05) {
        const double d1 = v[2] - v[0], d2 = v[4] - v[2];
        const double lam = table.nodes()[2] / table.nodes()[0];
        if (d1 != 0.0 && d2 != 0.0 && (d1 > 0.0) == (d2 > 0.0)) {
            const double gamma = std::log(d2 / d1) / std::log(lam);
            if (gamma > 0.05 && gamma < 8.0) {
                const double b = d1 / (std::pow(lam, gamma) - 1.0);
                in.inner_amplitude = v[0] - b;
                in.inner_exponent = 0.0;
                in.inner_amplitude2 = b;
                in.inner_exponent2 = gamma;
                const double r0 = in.r_inner, a0 = v[0] - b;
                in.f = [&table, r0, a0, b, gamma](double r) {
                    return r < r0 ? a0 + b * std::pow(r / r0, gamma) : table(r);
                };
            }
        }
    }
    const auto& s = table.samples();
    if (table.outer_tail().amplitude == 0.0) {
        int last = static_cast<int>(s.size()) - 1;
        while (last >= 0 && s[last] == 0.0) --last;
        in.support_end = last < 0 ? 0.0 : table.nodes()[std::min<int>(last + 1, s.size() - 1)];
    }
    return in;
}

RadialFunction tabulate_symbol(const std::function<double(double)>& symbol, double r_min,
                               double r_max, int per_decade, int threads) {
    if (!(r_min > 0.0 && r_max > r_min)) fail("domain", "invalid spectral range");
    const int pts = std::max(64, static_cast<int>(std::ceil(std::log10(r_max / r_min) * per_decade)) + 1);
    RadialGrid g(r_min, r_max, pts);
    std::vector<double> v(pts);
    const auto x = g.nodes();
    parallel_for(pts, [&](std::size_t i) { v[i] = symbol(x[i]); }, threads);
    return RadialFunction(g, std::move(v));
}

SpectralSampling resolve_sampling(const SpectralSampling& s, const RadialGrid& out) {
    SpectralSampling r = s;
    if (r.r_min <= 0.0) r.r_min = 1e-3 / out.rho_max;
    if (r.r_max <= 0.0) r.r_max = 1e3 / out.rho_min;
    return r;
}

RadialFunction radial_fourier_inverse_integrand(const HankelIntegrand& in, int dim,
                                                const RadialGrid& grid, const TransformOptions& opt,
                                                TransformDiagnostics* diag) {
    check_dim(dim);
    const auto x = grid.nodes();
    std::vector<double> v(x.size());
    std::vector<long> pan(x.size(), 0);
    std::vector<char> ok(x.size(), 1);
    const double pre = inverse_prefactor(dim);
    parallel_for(x.size(), [&](std::size_t i) {
        bool c = true;
        v[i] = pre * hankel_core(in, dim, x[i], opt, &pan[i], &c);
        ok[i] = c;
    }, opt.threads);
    if (diag) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            diag->panels += pan[i];
            diag->unconverged += ok[i] ? 0 : 1;
        }
    }
    return RadialFunction(grid, std::move(v));
}

RadialFunction radial_fourier_inverse_table(const RadialFunction& table, int dim, const RadialGrid& grid,
                                            const TransformOptions& opt, TransformDiagnostics* diag) {
    check_dim(dim);
    const PowerTail& out = table.outer_tail();
    if (out.amplitude != 0.0 && out.exponent + 0.5 * (dim - 1) > 1e-9)
        fail("convergence", "symbol decays too slowly for the oscillatory transform (outer exponent " +
                                std::to_string(out.exponent) + ")");
    return radial_fourier_inverse_integrand(integrand_from_table(table), dim, grid, opt, diag);
}

RadialFunction radial_fourier_inverse(const std::function<double(double)>& symbol, int dim,
                                      const RadialGrid& grid, const TransformOptions& opt,
                                      TransformDiagnostics* diag) {
    check_dim(dim);
    HankelIntegrand in;
    in.f = symbol;
    in.breaks = geometric_breaks(resolve_sampling(opt.sampling, grid));
    return radial_fourier_inverse_integrand(in, dim, grid, opt, diag);
}

RadialFunction radial_fourier_inverse_ext(const std::function<long double(long double)>& symbol, int dim,
                                      const RadialGrid& grid, const TransformOptions& opt,
                                      TransformDiagnostics* diag) {
    check_dim(dim);
    HankelIntegrand in;
    in.f = [&symbol](double r) { return static_cast<double>(symbol(r)); };
    in.f_ext = symbol;
    in.breaks = geometric_breaks(resolve_sampling(opt.sampling, grid));
    TransformOptions o = opt;
    o.abs_floor = std::min(o.abs_floor, 1e-19);
    o.noise_floor = std::min(o.noise_floor, 64.0 * static_cast<double>(std::numeric_limits<long double>::epsilon()));
    return radial_fourier_inverse_integrand(in, dim, grid, o, diag);
}

std::vector<double> geometric_breaks(const SpectralSampling& s) {
    const int per = std::max(4, s.per_decade / 8);
    const int n = std::max(2, static_cast<int>(std::ceil(std::log10(s.r_max / s.r_min) * per)) + 1);
    return RadialGrid(s.r_min, s.r_max, std::max(n, 64)).nodes();
}

RadialFunction radial_fourier_inverse_split(const std::function<double(double)>& symbol,
                                            double tail_coeff, double mu, int dim,
                                            const RadialGrid& grid, const TransformOptions& opt) {
    check_dim(dim);
    if (!(mu > 0.0 && mu < dim)) fail("domain", "tail power must lie in (0, dim)");
    const SpectralSampling s = resolve_sampling(opt.sampling, grid);
    // Subtract c (1 + r^2)^{-mu/2}: same tail, smooth at the origin, and its
    // inverse transform is the Bessel potential kernel in closed form.
    auto reduced = [&](double r) { return symbol(r) - tail_coeff * std::pow(1.0 + r * r, -0.5 * mu); };
    const RadialFunction table = tabulate_symbol(reduced, s.r_min, s.r_max, s.per_decade, opt.threads);
    const RadialFunction body = radial_fourier_inverse_table(table, dim, grid, opt);
    const auto x = grid.nodes();
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        v[i] = body.samples()[i] + tail_coeff * bessel_potential_kernel(mu, dim, x[i]);
    return RadialFunction(grid, std::move(v));
}

double radial_fourier_forward_at(const RadialFunction& h, int dim, double r, const TransformOptions& opt) {
    check_dim(dim);
    const PowerTail& out = h.outer_tail();
    if (out.amplitude != 0.0 && out.exponent + 0.5 * (dim - 1) > 1e-9)
        fail("integrability", "input decays too slowly for the forward transform");
    const HankelIntegrand in = integrand_from_table(h);
    return forward_prefactor(dim) * hankel_core(in, dim, r, opt);
}

RadialFunction radial_fourier_forward(const RadialFunction& h, int dim, const RadialGrid& r_grid,
                                      const TransformOptions& opt) {
    check_dim(dim);
    const PowerTail& out = h.outer_tail();
    if (out.amplitude != 0.0 && out.exponent + 0.5 * (dim - 1) > 1e-9)
        fail("integrability", "input decays too slowly for the forward transform");
    const HankelIntegrand in = integrand_from_table(h);
    const auto x = r_grid.nodes();
    std::vector<double> v(x.size());
    const double pre = forward_prefactor(dim);
    parallel_for(x.size(), [&](std::size_t i) { v[i] = pre * hankel_core(in, dim, x[i], opt); }, opt.threads);
    return RadialFunction(r_grid, std::move(v));
}

}  // namespace fracasym
