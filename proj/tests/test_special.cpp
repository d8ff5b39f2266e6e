#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracasym/error.hpp"
#include "fracasym/special.hpp"

using namespace fracasym;
using doctest::Approx;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}

TEST_CASE("gamma function") {
    CHECK(rel(gamma_fn(0.5), std::sqrt(M_PI)) < 1e-14);
    CHECK(rel(gamma_fn(5.0), 24.0) < 1e-14);
    CHECK(rel(gamma_fn(-0.5), -2.0 * std::sqrt(M_PI)) < 1e-14);
    CHECK_THROWS_AS(gamma_fn(-2.0), Error);
    CHECK(rgamma(-2.0) == 0.0);
    CHECK(rel(rgamma(0.5), 1.0 / std::sqrt(M_PI)) < 1e-14);
}

TEST_CASE("Mittag-Leffler spot values") {
    CHECK(rel(mittag_leffler({1.0, 1.0}, -1.0), std::exp(-1.0)) < 1e-14);
    CHECK(rel(mittag_leffler({0.5, 1.0}, -1.0), std::exp(1.0) * std::erfc(1.0)) < 1e-12);
    CHECK(rel(mittag_leffler({0.5, 0.5}, 0.0), 1.0 / std::sqrt(M_PI)) < 1e-14);
}

TEST_CASE("E_{1/2} against the scaled complementary error function") {
    for (int i = 0; i < 200; ++i) {
        const double x = 1e-3 * std::pow(5e4, i / 199.0);
        // e^{x^2} erfc(x) in long double, whose range covers erfc(50).
        const long double xl = x;
        const double ref = static_cast<double>(std::exp(xl * xl) * std::erfc(xl));
        CHECK(rel(mittag_leffler({0.5, 1.0}, -x), ref) <= 1e-10);
        CHECK(rel(mittag_leffler({1.0, 1.0}, -x), std::exp(-x)) <= 1e-12);
    }
}

TEST_CASE("ML tail coefficient") {
    CHECK(rel(ml_tail_coefficient(0.5), 1.0 / (2.0 * std::sqrt(M_PI))) < 1e-14);
    const double x = 1e6;
    CHECK(std::abs(mittag_leffler({0.5, 0.5}, -x) * x * x - 0.28209479) <= 1e-3);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int i = 0; i < 20; ++i) CHECK(ml_tail_coefficient(u(rng)) > 0.0);
}

TEST_CASE("ML integral identity") {
    // int_0^T t^{a-1} E_{a,a}(-lam t^a) dt = (1 - E_a(-lam T^a)) / lam, against adaptive quadrature.
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ua(0.2, 0.9), ul(0.1, 5.0), ut(0.5, 4.0);
    for (int i = 0; i < 5; ++i) {
        const double a = ua(rng), lam = ul(rng), T = ut(rng);
        // Substituting s = t^a removes the endpoint singularity: dt t^{a-1} = ds / a.
        const int n = 4000;
        const double S = std::pow(T, a);
        double q = 0.0;
        for (int k = 0; k < n; ++k) {
            const double s0 = S * k / n, s1 = S * (k + 1) / n;
            const double m = 0.5 * (s0 + s1), h = 0.5 * (s1 - s0);
            const double g = h / std::sqrt(3.0);
            q += h * (mittag_leffler({a, a}, -lam * (m - g)) + mittag_leffler({a, a}, -lam * (m + g))) / a;
        }
        const double exact = (1.0 - mittag_leffler({a, 1.0}, -lam * S)) / lam;
        CHECK(rel(q, exact) < 1e-8);
    }
}

TEST_CASE("half-integer Bessel functions") {
    CHECK(bessel_j_half(0.5, M_PI / 2.0) == Approx(2.0 / M_PI).epsilon(1e-14));
    CHECK(std::abs(bessel_j_half(0.5, M_PI)) < 1e-15);
    CHECK(bessel_j_half(1.5, M_PI) == Approx(std::sqrt(2.0) / M_PI).epsilon(1e-14));
    CHECK(spherical_bessel_j_scaled(2, 0.0) == Approx(1.0 / 15.0));
    CHECK(std::abs(spherical_bessel_j(1, spherical_bessel_zero(1, 3))) < 1e-13);
    CHECK(spherical_bessel_zero(0, 2) == Approx(2.0 * M_PI).epsilon(1e-14));
}
