// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "fracasym/kernels.hpp"
#include "fracasym/potentials.hpp"
#include "fracasym/radialtransform.hpp"
#include "fracasym/solver.hpp"
#include "fracasym/special.hpp"
#include "fracasym/verify.hpp"

using namespace fracasym;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& measured, double seconds) {
    std::printf("%s criterion %d: %s | %s | %.1f s\n", ok ? "PASS" : "FAIL", id, what.c_str(), measured.c_str(),
                seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

template <class F>
void criterion(int id, const std::string& what, F body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string measured;
    try {
        ok = body(measured);
    } catch (const std::exception& e) {
        measured = std::string("exception: ") + e.what();
    }
    report(id, ok, what, measured, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return v.size() >= 2;
}

const double kM = std::pow(M_PI, 1.5);
const FracParams kP{0.5, 0.5, 3};
const RadialGrid kKernelGrid(1e-3, 1e3, 768);

KernelOptions no_cache() {
    KernelOptions o;
    o.use_cache = false;
    return o;
}

VerifyConfig config(Theorem th, double gamma) {
    VerifyConfig c;
    c.theorem = th;
    c.params = kP;
    c.forcing.gamma = gamma;
    c.kernel.use_cache = false;
    return c;
}

}  // namespace

int main() {
    criterion(1, "Mittag-Leffler against erfc and exp on [1e-3, 50], < 1 s", [](std::string& m) {
        const auto t0 = std::chrono::steady_clock::now();
        double w_half = 0.0, w_one = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double x = 1e-3 * std::pow(5e4, i / 199.0);
            const long double xl = x;
            const double ref = static_cast<double>(std::exp(xl * xl) * std::erfc(xl));
            w_half = std::max(w_half, std::abs(mittag_leffler({0.5, 1.0}, -x) / ref - 1.0));
            w_one = std::max(w_one, std::abs(mittag_leffler({1.0, 1.0}, -x) / std::exp(-x) - 1.0));
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        m = fmt("E_1/2 worst rel %.2e, E_1 worst rel %.2e, %.3f s", w_half, w_one, dt);
        return w_half <= 1e-10 && w_one <= 1e-12 && dt < 1.0;
    });

    criterion(2, "transform round trip (N=3,5) and heat-kernel inverse, < 10 s", [](std::string& m) {
        const auto t0 = std::chrono::steady_clock::now();
        const RadialGrid g(1e-3, 1e3, 768);
        double rt[2] = {0.0, 0.0};
        int k = 0;
        for (int dim : {3, 5}) {
            auto h = radial_fourier_inverse_ext([](long double r) { return std::exp(-r * r / 2.0L); }, dim, g);
            auto f = radial_fourier_forward(h, dim, g);
            for (std::size_t i = 0; i < f.nodes().size(); ++i) {
                const double x = f.nodes()[i], e = std::exp(-x * x / 2.0);
                if (e > 1e-12) rt[k] = std::max(rt[k], std::abs(f.samples()[i] / e - 1.0));
            }
            ++k;
        }
        // 20 spot radii spread over the nodes of a minimal grid on [0.05, 8].
        RadialGrid spots(0.05, 8.0, 64);
        auto heat = radial_fourier_inverse([](double r) { return std::exp(-r * r); }, 5, spots);
        double hw = 0.0;
        for (int j = 0; j < 20; ++j) {
            const std::size_t i = static_cast<std::size_t>(j * 63 / 19);
            const double x = heat.nodes()[i];
            hw = std::max(hw, std::abs(heat.samples()[i] / (std::pow(4.0 * M_PI, -2.5) * std::exp(-x * x / 4.0)) - 1.0));
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        m = fmt("round trip N=3 %.2e, N=5 %.2e; heat %.2e; %.1f s", rt[0], rt[1], hw, dt);
        return rt[0] <= 1e-6 && rt[1] <= 1e-6 && hw <= 1e-6 && dt < 10.0;
    });

    const KernelProfile G = build_y_profile(kP, kKernelGrid, no_cache());

    criterion(3, "kernel mass equals 1/Gamma(alpha) for (0.5,0.5,3)", [&](std::string& m) {
        const double e = std::abs(radial_mass(G.values, 3) * std::sqrt(M_PI) - 1.0);
        m = fmt("relative error %.2e", e);
        return e <= 1e-6;
    });

    criterion(4, "kappa plateau over [1e-3, 1e-2]", [&](std::string& m) {
        const double target = ml_tail_coefficient(0.5) * riesz_constant(2.0, 3);
        const double e = std::abs(G.kappa.value / target - 1.0);
        m = fmt("kappa %.7f (target %.7f), rel %.2e, variation %.2e", G.kappa.value, target, e, G.kappa.variation);
        return G.kappa.ok && G.kappa.decade_lo == 1e-3 && G.kappa.variation < 1e-2 && e <= 1e-2;
    });

    criterion(5, "exterior log-log slope on [5, 500] equals -(N+2beta)", [&](std::string& m) {
        const BoundReport& b = G.bounds;
        const double e = std::abs(b.exterior_slope / -4.0 - 1.0);
        m = fmt("slope %.4f, rel %.2e", b.exterior_slope, e);
        return b.exterior_applicable && e <= 3e-2;
    });

    criterion(6, "constant identity A = c_{2beta}", [&](std::string& m) {
        const double e1 = std::abs(G.constant_A / riesz_constant(1.0, 3) - 1.0);
        const KernelProfile G5 = build_y_profile({0.5, 1.0, 5}, kKernelGrid, no_cache());
        const double e2 = std::abs(G5.constant_A / riesz_constant(2.0, 5) - 1.0);
        const KernelProfile H = build_y_profile({1.0, 1.0, 5, true}, kKernelGrid, no_cache());
        const double e3 = std::abs(H.constant_A * 8.0 * M_PI * M_PI - 1.0);
        m = fmt("(0.5,0.5,3) %.2e, (0.5,1,5) %.2e, heat %.2e", e1, e2, e3);
        return e1 <= 1e-3 && e2 <= 1e-3 && e3 <= 1e-6;
    });

    criterion(7, "time-integral identity at rho = 1", [&](std::string& m) {
        std::vector<double> e;
        for (double T : {1e2, 1e3, 1e4})
            e.push_back(std::abs(time_integral_Y(G, 1.0, T) / riesz_constant(1.0, 3) - 1.0));
        m = fmt("errors %.3e %.3e %.3e", e[0], e[1], e[2]);
        return strictly_decreasing(e) && e.back() <= 1e-2;
    });

    criterion(8, "norm law slope -sigma(p) for p = 1, 1.2", [&](std::string& m) {
        const Exponents ex = derive_exponents(kP);
        std::vector<double> ts{1e2, 1e3, 1e4};
        double worst = 0.0;
        std::string parts;
        for (double p : {1.0, 1.2}) {
            std::vector<double> n;
            for (double t : ts) n.push_back(lp_norm_annulus(kernel_slice(G, t), p, 3, 0.0, kInf));
            const double s = loglog_slope(ts, n);
            const double e = std::abs(s / -sigma_p(ex, p) - 1.0);
            worst = std::max(worst, e);
            parts += fmt("p=%g slope %.5f; ", p, s);
        }
        m = parts + fmt("worst rel %.2e", worst);
        return worst <= 1e-2;
    });

    criterion(9, "gamma = 0 Duhamel quadrature against the closed form", [](std::string& m) {
        const RadialGrid g(1e-3, 1e5, 1024);
        ForcingSpec f;
        f.gamma = 0.0;
        double worst = 0.0;
        for (double t : {1.0, 1e2, 1e4}) {
            const RadialFunction T = time_factor_table(kP, 0.0, t, g);
            for (std::size_t i = 0; i < T.nodes().size(); ++i) {
                const double r = T.nodes()[i];
                const double ghat = forcing_symbol(f, 3, r);
                const double exact = duhamel_time_factor_closed(kP, r, t) * ghat;
                if (exact == 0.0) continue;
                worst = std::max(worst, std::abs(T.samples()[i] * ghat / exact - 1.0));
            }
        }
        m = fmt("worst rel %.2e", worst);
        return worst <= 1e-6;
    });

    criterion(10, "compact sets: gamma = 2, p = inf, K = B_1", [](std::string& m) {
        VerifyConfig c = config(Theorem::Compact, 2.0);
        c.p = kInf;
        const ConvergenceReport r = verify_compact(c);
        const auto& e = r.normalized_errors;
        m = fmt("errors %.3e %.3e %.3e", e[0], e[1], e[2]);
        return r.verdict == "pass" && e.back() <= 5e-2;
    });

    criterion(11, "intermediate scales: classes S and F, phi = t^{theta/2}, p = 1", [](std::string& m) {
        bool ok = true;
        for (double gamma : {0.5, 2.0}) {
            VerifyConfig c = config(Theorem::Intermediate, gamma);
            c.scale.kind = ScaleSpec::Kind::Intermediate;
            c.scale.phi.exponent = derive_exponents(kP).theta / 2.0;
            c.scale.nu = 1.0;
            c.scale.mu = 2.0;
            const ConvergenceReport r = verify_intermediate(c);
            const auto& e = r.normalized_errors;
            const bool laws = r.details["power_law"]["pass"].get<bool>();
            m += fmt("gamma=%g: %.3e %.3e %.3e", gamma, e[0], e[1], e[2]) + (laws ? " laws ok; " : " laws off; ");
            ok = ok && r.verdict == "pass" && laws && strictly_decreasing(e) && e.back() <= 5e-2;
        }
        return ok;
    });

    criterion(12, "outer region, gamma = 2: M_inf Y series and scalar mass law", [](std::string& m) {
        VerifyConfig c = config(Theorem::OuterMass, 2.0);
        c.p = 1.0;
        c.scale.kind = ScaleSpec::Kind::Outer;
        const ConvergenceReport r = verify_outer_mass(c);
        const auto& e = r.normalized_errors;
        const double scalar = r.details["scalar_errors"].back().get<double>();
        m = fmt("series %.3e %.3e %.3e; scalar at 1e4 %.2e", e[0], e[1], e[2], scalar);
        return strictly_decreasing(e) && e.back() <= 5e-2 && scalar <= 1e-2;
    });

    criterion(13, "gamma = 1 log law at t = 1e6 (scalar quadrature)", [](std::string& m) {
        ForcingSpec f;
        f.gamma = 1.0;
        const double t = 1e6;
        const double m0 = spatial_mass(f, 3);
        const double e = std::abs(gamma_fn(0.5) * solution_mass(f, kP, t) / (m0 * std::pow(t, -0.5) * std::log(t)) - 1.0);
        m = fmt("relative deviation %.4e", e);
        return e <= 5e-2;
    });

    criterion(14, "coherence: gamma = 0.5, xi = 1e-2 at t = 1e4", [](std::string& m) {
        const ConvergenceReport r = verify_coherence(config(Theorem::Coherence, 0.5));
        const double ratio = r.details["ratios"].back().get<double>();
        m = fmt("ratios %.5f %.5f %.5f", r.details["ratios"][0].get<double>(), r.details["ratios"][1].get<double>(),
                ratio);
        return std::abs(ratio - 1.0) <= 5e-2;
    });

    criterion(15, "Newtonian potential of a Gaussian (N = 3, mu = 2)", [](std::string& m) {
        const RadialGrid g(1e-3, 1e3, 768);
        const RadialFunction I =
            riesz_potential_symbol([](double r) { return kM * std::exp(-r * r / 4.0); }, 2.0, 3, g);
        double worst = 0.0;
        for (std::size_t i = 0; i < I.nodes().size(); ++i) {
            const double x = I.nodes()[i];
            if (x < 0.1 || x > 50.0) continue;
            worst = std::max(worst, std::abs(I.samples()[i] / (kM * std::erf(x) / x) - 1.0));
        }
        const double lim = std::abs(50.0 * I(50.0) / kM - 1.0);
        const auto tail = riesz_tail_check([](double s) { return std::exp(-s * s); }, 2.0, 3, kInf, 1.0, 2.0,
                                           {5.0, 10.0, 20.0});
        m = fmt("r I(50) rel %.2e; erf worst %.2e; tail errors %.2e .. %.2e", lim, worst,
                tail.normalized_errors.front(), tail.normalized_errors.back());
        return lim <= 1e-2 && worst <= 1e-5 && strictly_decreasing(tail.normalized_errors);
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
