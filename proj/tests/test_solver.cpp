#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fracasym/error.hpp"
#include "fracasym/potentials.hpp"
#include "fracasym/radialtransform.hpp"
#include "fracasym/solver.hpp"
#include "fracasym/special.hpp"

using namespace fracasym;
using doctest::Approx;

namespace {

const double kM = std::pow(M_PI, 1.5);
const FracParams kP{0.5, 0.5, 3};

ForcingSpec gaussian(double gamma, double amplitude = 1.0) {
    ForcingSpec f;
    f.gamma = gamma;
    f.amplitude = amplitude;
    return f;
}

}  // namespace

TEST_CASE("forcing masses") {
    CHECK(spatial_mass(gaussian(2.0), 3) == Approx(kM).epsilon(1e-14));
    CHECK(forcing_mass(gaussian(1.0), 3, 9.0) == Approx(kM / 10.0).epsilon(1e-14));
    CHECK(forcing_mass(gaussian(0.0), 3, 123.0) == Approx(kM).epsilon(1e-14));
    CHECK(forcing_mass(gaussian(2.0, 0.0), 3, 1.0) == 0.0);
    for (auto fam : {ForcingSpec::Family::Gaussian, ForcingSpec::Family::Bump, ForcingSpec::Family::HeavyTail}) {
        ForcingSpec f;
        f.family = fam;
        f.width = 1.3;
        f.radius = 0.7;
        for (int dim : {3, 5}) {
            const double m = radial_mass([&](double s) { return forcing_profile(f, dim, s); }, dim);
            CHECK(spatial_mass(f, dim) == Approx(m).epsilon(1e-9));
        }
    }
}

TEST_CASE("forcing symbols") {
    // Textbook pairs in three dimensions.
    ForcingSpec f;
    f.width = 1.3;
    for (double r : {0.1, 1.0, 3.0})
        CHECK(forcing_symbol(f, 3, r) == Approx(std::pow(M_PI * 1.69, 1.5) * std::exp(-1.69 * r * r / 4.0)));
    f.family = ForcingSpec::Family::HeavyTail;
    for (double r : {0.1, 1.0, 3.0}) CHECK(forcing_symbol(f, 3, r) == Approx(M_PI * M_PI * std::exp(-r)));
    // Bump: 4 pi int_0^R g(rho) rho^2 sin(r rho) / (r rho) drho by adaptive quadrature.
    f.family = ForcingSpec::Family::Bump;
    f.radius = 0.7;
    for (double r : {0.0, 0.1, 1.0, 3.0, 20.0}) {
        auto integrand = [&](double rho) {
            const double x = r * rho;
            return forcing_profile(f, 3, rho) * rho * rho * (x == 0.0 ? 1.0 : std::sin(x) / x);
        };
        const double q = 4.0 * M_PI * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                                          integrand, 0.0, f.radius, 15, 1e-14);
        CHECK(forcing_symbol(f, 3, r) == Approx(q).epsilon(1e-10));
    }
}

TEST_CASE("family names") {
    CHECK(parse_family("heavy-tail") == ForcingSpec::Family::HeavyTail);
    CHECK(to_string(ForcingSpec::Family::Bump) == "bump");
    CHECK_THROWS_AS(parse_family("box"), Error);
}

TEST_CASE("time-integrated forcing") {
    const RadialGrid g(1e-2, 1e2, 64);
    const auto a = time_integrated_forcing(gaussian(2.0), 3, g);
    CHECK(a.m_infinity == Approx(kM).epsilon(1e-14));
    for (std::size_t i = 0; i < a.F.nodes().size(); ++i) {
        const double x = a.F.nodes()[i];
        CHECK(a.F.samples()[i] == Approx(std::exp(-x * x)).epsilon(1e-14));
    }
    CHECK(time_integrated_forcing(gaussian(1.5), 3, g).m_infinity == Approx(2.0 * kM).epsilon(1e-14));
    CHECK_THROWS_AS(time_integrated_forcing(gaussian(1.0), 3, g), Error);
}

TEST_CASE("time factor against the gamma = 0 closed form") {
    for (double t : {1.0, 1e2, 1e4})
        for (double r : {1e-4, 1e-2, 0.3, 1.0, 5.0, 100.0, 1e4}) {
            const double q = duhamel_time_factor(kP, 0.0, r, t);
            CHECK(std::abs(q / duhamel_time_factor_closed(kP, r, t) - 1.0) <= 1e-6);
        }
}

TEST_CASE("solution mass") {
    CHECK(solution_mass(gaussian(0.0, 1.0 / kM), kP, 4.0) == Approx(4.0 / std::sqrt(M_PI)).epsilon(1e-10));
    CHECK(solution_mass(gaussian(2.0), kP, 0.0) == 0.0);
    const double m = solution_mass(gaussian(2.0, 1.0 / kM), kP, 1e4);
    CHECK(std::abs(gamma_fn(0.5) * m * std::pow(1e4, 0.5) - 1.0) < 1e-2);
}

TEST_CASE("solution slice: positivity and mass") {
    // At t = 1e2 the grid must reach 1e4 before the rho^{-N-2beta} tail is asymptotic.
    const RadialGrid g(1e-3, 1e4, 768);
    const SolutionSlice S = solve_duhamel(gaussian(2.0), kP, 100.0, g);
    for (double v : S.u.samples()) CHECK(v >= 0.0);
    CHECK(radial_mass(S.u, 3) == Approx(solution_mass(gaussian(2.0), kP, 100.0)).epsilon(1e-6));
    CHECK(S.time_unconverged == 0);

    const SolutionSlice Z = solve_duhamel(gaussian(2.0, 0.0), kP, 100.0, g);
    for (double v : Z.u.samples()) CHECK(v == 0.0);
}

TEST_CASE("short times") {
    const RadialGrid g(1e-2, 1e2, 256);
    const double t = 1e-6;
    const SolutionSlice S = solve_duhamel(gaussian(0.0), kP, t, g);
    double sup = 0.0;
    for (double v : S.u.samples()) sup = std::max(sup, std::abs(v));
    CHECK(sup <= std::pow(t, 0.5) / gamma_fn(1.5));
}

TEST_CASE("classical heat Duhamel") {
    // alpha = beta = 1, N = 5, g = e^{-rho^2}: u = int_0^t (1 + 4s)^{-5/2} exp(-rho^2 / (1 + 4s)) ds.
    const FracParams P{1.0, 1.0, 5, true};
    const RadialGrid g(1e-2, 1e2, 256);
    const double t = 2.0;
    const SolutionSlice S = solve_duhamel(gaussian(0.0), P, t, g);
    for (double rho : {0.05, 0.5, 1.5, 3.0}) {
        const int n = 20000;
        double q = 0.0;
        for (int k = 0; k < n; ++k) {
            const double s = t * (k + 0.5) / n;
            q += std::pow(1.0 + 4.0 * s, -2.5) * std::exp(-rho * rho / (1.0 + 4.0 * s));
        }
        q *= t / n;
        CHECK(S.u(rho) == Approx(q).epsilon(1e-6));
    }
}

TEST_CASE("outer reference") {
    const RadialGrid g(1e-3, 1e5, 768);
    const RadialFunction Z = outer_reference(gaussian(0.0, 0.0), kP, 100.0, g);
    for (double v : Z.samples()) CHECK(v == 0.0);
    // gamma = 0 tends to the stationary profile M0 c_{2beta} E_{2beta}.
    const RadialFunction O = outer_reference(gaussian(0.0), kP, 1e4, g);
    CHECK(O(1.0) / (kM * riesz_constant(1.0, 3)) == Approx(1.0).epsilon(1e-2));
}
