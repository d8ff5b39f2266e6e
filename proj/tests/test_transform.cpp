#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>

#include "fracasym/error.hpp"
#include "fracasym/radial.hpp"
#include "fracasym/radialtransform.hpp"

using namespace fracasym;
using doctest::Approx;

namespace {

double max_rel(const RadialFunction& h, const std::function<double(double)>& exact, double lo, double hi,
               double floor) {
    double m = 0.0;
    for (std::size_t i = 0; i < h.nodes().size(); ++i) {
        const double x = h.nodes()[i];
        const double e = exact(x);
        if (x < lo || x > hi || std::abs(e) <= floor) continue;
        m = std::max(m, std::abs(h.samples()[i] / e - 1.0));
    }
    return m;
}

}  // namespace

TEST_CASE("grid and interpolation") {
    const RadialGrid g(1e-2, 1e2, 81);
    CHECK(g.node(0) == Approx(1e-2));
    CHECK(g.node(80) == Approx(1e2));
    CHECK(g.node(40) == Approx(1.0));
    CHECK(g.hash() == RadialGrid(1e-2, 1e2, 81).hash());
    CHECK(g.hash() != RadialGrid(1e-2, 1e2, 82).hash());

    std::vector<double> v;
    for (double x : g.nodes()) v.push_back(3.0 * std::pow(x, -1.5));
    const RadialFunction f(g, v);
    for (double x : {0.0137, 0.5, 2.71, 77.0}) CHECK(f(x) == Approx(3.0 * std::pow(x, -1.5)).epsilon(1e-12));
    // Power-law tails continue the law beyond the grid.
    CHECK(f(1e-4) == Approx(3.0 * std::pow(1e-4, -1.5)).epsilon(1e-10));
    CHECK(f(1e4) == Approx(3.0 * std::pow(1e4, -1.5)).epsilon(1e-10));
    CHECK(f.outer_tail().exponent == Approx(-1.5));
}

TEST_CASE("annulus norms") {
    const RadialGrid g(1e-2, 1e2, 401);
    std::vector<double> v, z(g.points, 0.0);
    for (double x : g.nodes()) v.push_back(1.0 / x);
    const RadialFunction u(g, v), zero(g, z);
    CHECK(lp_norm_annulus(u, 1.0, 3, 1.0, 2.0) == Approx(6.0 * M_PI).epsilon(1e-10));
    CHECK(lp_norm_annulus(u, kInf, 3, 1.0, 2.0) == Approx(1.0).epsilon(1e-10));
    CHECK(lp_norm_annulus(zero, 1.0, 3, 1.0, 2.0) == 0.0);
    auto inv = [](double r) { return 1.0 / r; };
    CHECK(lp_norm_annulus(inv, {}, 1.0, 3, 1.0, 2.0) == Approx(6.0 * M_PI).epsilon(1e-10));
    CHECK(lp_norm_annulus(inv, {}, kInf, 3, 1.0, 2.0) == Approx(1.0).epsilon(1e-12));
    bool ext = false;
    lp_norm_annulus(u, 1.0, 3, 50.0, 500.0, &ext);
    CHECK(ext);
    CHECK_THROWS_AS(lp_norm_annulus(u, 1.0, 3, 2.0, 1.0), Error);
}

TEST_CASE("CSV round trip and atomic write") {
    const RadialGrid g(1e-3, 1e3, 64);
    std::vector<double> v;
    for (double x : g.nodes()) v.push_back(std::exp(-x) / 3.0);
    const RadialFunction f(g, v);
    const std::string csv = to_csv(f, "h");
    CHECK(csv.rfind("rho,h\n", 0) == 0);
    std::vector<double> rho, val;
    parse_csv(csv, rho, val);
    REQUIRE(val.size() == v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(val[i] == v[i]);
        CHECK(rho[i] == g.node(static_cast<int>(i)));
    }
    const auto dir = std::filesystem::temp_directory_path() / "fracasym_test_atomic";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "f.csv").string();
    write_file_atomic(path, csv);
    write_file_atomic(path, csv);
    CHECK(read_file(path) == csv);
    std::filesystem::remove_all(dir);
}

TEST_CASE("Wynn epsilon accelerates an alternating series") {
    std::vector<double> s;
    double acc = 0.0;
    for (int k = 1; k <= 15; ++k) {
        acc += (k % 2 ? 1.0 : -1.0) / k;
        s.push_back(acc);
    }
    CHECK(wynn_epsilon(s.data(), static_cast<int>(s.size())) == Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("Gaussian inverse transforms") {
    const RadialGrid g(1e-3, 1e3, 768);
    auto h3 = radial_fourier_inverse([](double r) { return std::exp(-r * r / 2.0); }, 3, g);
    auto e3 = [](double x) { return std::pow(2.0 * M_PI, -1.5) * std::exp(-x * x / 2.0); };
    CHECK(max_rel(h3, e3, 0.0, kInf, 1e-12 * e3(0.0)) < 1e-6);
    CHECK(h3(1e-3) == Approx(0.06349364).epsilon(1e-7));

    auto h5 = radial_fourier_inverse([](double r) { return std::exp(-r * r); }, 5, g);
    auto e5 = [](double x) { return std::pow(4.0 * M_PI, -2.5) * std::exp(-x * x / 4.0); };
    CHECK(max_rel(h5, e5, 0.0, kInf, 1e-12 * e5(0.0)) < 1e-6);
    CHECK(h5(1e-3) == Approx(0.0017865).epsilon(1e-4));

    auto z = radial_fourier_inverse([](double) { return 0.0; }, 3, g);
    for (double v : z.samples()) CHECK(v == 0.0);
}

TEST_CASE("algebraic symbols") {
    const RadialGrid g(1e-3, 1e3, 768);
    // (1 + r^2)^{-1} <-> e^{-rho} / (4 pi rho) in three dimensions.
    auto m1 = radial_fourier_inverse([](double r) { return 1.0 / (1.0 + r * r); }, 3, g);
    auto e1 = [](double x) { return std::exp(-x) / (4.0 * M_PI * x); };
    CHECK(max_rel(m1, e1, 0.1, 20.0, 0.0) < 1e-6);
    for (double x : {0.1, 1.0, 7.0}) CHECK(bessel_potential_kernel(2.0, 3, x) == Approx(e1(x)).epsilon(1e-13));
    CHECK(bessel_potential_kernel(4.0, 3, 2.0) == Approx(std::exp(-2.0) / (8.0 * M_PI)).epsilon(1e-13));

    // r^{-2}(1 - e^{-r^2}) <-> erfc(rho/2) / (4 pi rho).
    auto sym = [](double r) { return r < 1e-4 ? 1.0 - r * r / 2.0 : -std::expm1(-r * r) / (r * r); };
    auto h = radial_fourier_inverse_split(sym, 1.0, 2.0, 3, g);
    auto ex = [](double x) { return std::erfc(x / 2.0) / (4.0 * M_PI * x); };
    // Beyond rho ~ 6 the result drops below ~1e-16 of the bulk and cancellation takes over.
    CHECK(max_rel(h, ex, 1e-3, 6.0, 0.0) < 1e-6);
}

TEST_CASE("forward transforms") {
    const RadialGrid g(1e-3, 1e3, 768);
    std::vector<double> v1, v2;
    for (double x : g.nodes()) {
        v1.push_back(std::exp(-x * x / 2.0));
        v2.push_back(std::exp(-x * x));
    }
    const RadialFunction h1(g, v1), h2(g, v2);
    CHECK(radial_fourier_forward_at(h1, 3, 1e-4) == Approx(15.749610).epsilon(1e-7));
    CHECK(radial_fourier_forward_at(h1, 3, 2.0) == Approx(std::pow(2.0 * M_PI, 1.5) * std::exp(-2.0)).epsilon(1e-8));
    CHECK(radial_fourier_forward_at(h2, 3, 1e-6) == Approx(std::pow(M_PI, 1.5)).epsilon(1e-8));
    const RadialFunction zero(g, std::vector<double>(g.points, 0.0));
    CHECK(radial_fourier_forward_at(zero, 3, 1.0) == 0.0);
}

TEST_CASE("forward of inverse is the identity on Gaussians") {
    const RadialGrid g(1e-3, 1e3, 768);
    for (int dim : {3, 5}) {
        auto h = radial_fourier_inverse_ext([](long double r) { return std::exp(-r * r / 2.0L); }, dim, g);
        auto f = radial_fourier_forward(h, dim, g);
        CHECK(max_rel(f, [](double r) { return std::exp(-r * r / 2.0); }, 0.0, kInf, 1e-12) < 1e-6);
    }
}
