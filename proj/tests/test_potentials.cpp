#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracasym/potentials.hpp"

using namespace fracasym;
using doctest::Approx;

namespace {

const double kM = std::pow(M_PI, 1.5);
double gauss(double s) { return std::exp(-s * s); }
double gauss_hat(double r) { return kM * std::exp(-r * r / 4.0); }
double newton(double r) { return kM * std::erf(r) / r; }

}  // namespace

TEST_CASE("Riesz constants") {
    CHECK(riesz_constant(2.0, 3) == Approx(1.0 / (4.0 * M_PI)).epsilon(1e-14));
    CHECK(riesz_constant(1.0, 3) == Approx(1.0 / (2.0 * M_PI * M_PI)).epsilon(1e-14));
    CHECK(riesz_constant(2.0, 5) == Approx(1.0 / (8.0 * M_PI * M_PI)).epsilon(1e-14));
    CHECK(riesz_kernel(2.0, 3, 4.0) == Approx(0.25));
}

TEST_CASE("spectral Newtonian potential of a Gaussian") {
    const RadialGrid g(1e-3, 1e3, 768);
    const RadialFunction I = riesz_potential_symbol(gauss_hat, 2.0, 3, g);
    double worst = 0.0;
    for (std::size_t i = 0; i < I.nodes().size(); ++i) {
        const double x = I.nodes()[i];
        if (x < 0.1 || x > 50.0) continue;
        worst = std::max(worst, std::abs(I.samples()[i] / newton(x) - 1.0));
    }
    CHECK(worst <= 1e-5);
    CHECK(I(1.0) == Approx(kM * std::erf(1.0)).epsilon(1e-6));
    CHECK(I(1.0) == Approx(4.69243).epsilon(1e-5));
    CHECK(std::abs(50.0 * I(50.0) / kM - 1.0) <= 1e-2);

    const RadialFunction Z = riesz_potential_symbol([](double) { return 0.0; }, 2.0, 3, g);
    for (double v : Z.samples()) CHECK(v == 0.0);
}

TEST_CASE("potential of a tabulated Gaussian") {
    const RadialGrid g(1e-3, 1e3, 768);
    std::vector<double> v;
    for (double x : g.nodes()) v.push_back(gauss(x));
    const RadialFunction I = riesz_potential(RadialFunction(g, v), 2.0, 3);
    for (double x : {0.1, 1.0, 4.0, 20.0}) CHECK(I(x) == Approx(newton(x)).epsilon(1e-5));
}

TEST_CASE("radial mass and convolution remainder") {
    CHECK(radial_mass(gauss, 3) == Approx(kM).epsilon(1e-12));
    for (double r : {0.5, 1.0, 2.0, 4.0}) {
        const double exact = kM * (std::erf(r) - 1.0) / r;
        CHECK(riesz_remainder_at(gauss, kM, 2.0, 3, r) == Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("Riesz tail convergence") {
    const auto sup = riesz_tail_check(gauss, 2.0, 3, kInf, 1.0, 2.0, {5.0, 10.0, 20.0});
    REQUIRE(sup.normalized_errors.size() == 3);
    CHECK(sup.normalized_errors[1] < sup.normalized_errors[0]);
    CHECK(sup.normalized_errors[2] < sup.normalized_errors[1]);
    CHECK(sup.normalized_errors[2] < 1e-6);
    CHECK(sup.verdict == "pass");

    const auto l1 = riesz_tail_check(gauss, 2.0, 3, 1.0, 1.0, 2.0, {5.0, 10.0, 20.0});
    CHECK(l1.normalized_errors[1] < l1.normalized_errors[0]);
    CHECK(l1.normalized_errors[2] < l1.normalized_errors[1]);

    const auto z = riesz_tail_check([](double) { return 0.0; }, 2.0, 3, 1.0, 1.0, 2.0, {5.0, 10.0, 20.0});
    for (double e : z.normalized_errors) CHECK(e == 0.0);
}
