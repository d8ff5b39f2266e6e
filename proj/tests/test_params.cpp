#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracasym/error.hpp"
#include "fracasym/params.hpp"

using namespace fracasym;
using doctest::Approx;

TEST_CASE("derived exponents") {
    auto e = derive_exponents({0.5, 0.5, 3});
    CHECK(e.theta == Approx(0.5));
    CHECK(e.sigma_star == Approx(2.0));
    CHECK(e.p_star == Approx(3.0));
    CHECK(e.p_crit == Approx(1.5));

    e = derive_exponents({0.5, 1.0, 5});
    CHECK(e.theta == Approx(0.25));
    CHECK(e.sigma_star == Approx(1.75));
    CHECK(e.p_star == Approx(5.0));
    CHECK(e.p_crit == Approx(5.0 / 3.0));

    e = derive_exponents({0.9, 0.6, 3});
    CHECK(e.theta == Approx(0.75));
    CHECK(e.sigma_star == Approx(2.35));
    CHECK(e.p_star == Approx(5.0));
    CHECK(e.p_crit == Approx(5.0 / 3.0));
}

TEST_CASE("parameter validation names the rule") {
    auto msg = [](FracParams p) {
        try {
            validate(p);
        } catch (const Error& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(msg({0.5, 1.0, 4}).find("dim > 4*beta") != std::string::npos);
    CHECK(msg({1.0, 1.0, 5}).find("validation_mode") != std::string::npos);
    CHECK(msg({0.0, 0.5, 3}).find("alpha") != std::string::npos);
    CHECK(msg({0.5, 1.5, 7}).find("beta") != std::string::npos);
    CHECK(msg({0.5, 0.5, 3}).empty());
    CHECK(msg({1.0, 1.0, 5, true}).empty());
}

TEST_CASE("sigma(p)") {
    for (FracParams p : {FracParams{0.5, 0.5, 3}, FracParams{0.5, 1.0, 5}, FracParams{0.9, 0.6, 3},
                         FracParams{0.3, 0.2, 1}}) {
        const auto e = derive_exponents(p);
        CHECK(sigma_p(e, 1.0) == Approx(1.0 - p.alpha));
        CHECK(sigma_p(e, e.p_crit) == Approx(1.0));
        CHECK(sigma_p(e, kInf) == Approx(e.sigma_star));
    }
}

TEST_CASE("critical q") {
    CHECK(q_critical(derive_exponents({0.5, 1.0, 5}), kInf) == Approx(2.5));
    CHECK(q_critical(derive_exponents({0.5, 0.5, 3}), 1.5) == Approx(1.0));
    CHECK(q_critical(derive_exponents({0.5, 0.5, 3}), 3.0) == Approx(1.5));
}

TEST_CASE("scale classification") {
    const auto e = derive_exponents({0.5, 0.5, 3});
    ScaleSpec s;
    s.kind = ScaleSpec::Kind::Intermediate;
    s.phi.exponent = e.theta / 2.0;
    CHECK(classify_scale(0.5, e, s) == ScaleClass::Slow);
    CHECK(classify_scale(1.8, e, s) == ScaleClass::Fast);
    CHECK(classify_scale(2.0, e, s) == ScaleClass::Fast);

    ScaleSpec c1 = s;
    c1.phi.exponent = e.theta;
    c1.phi.log_exponent = -1.0 / (2.0 * e.beta);
    CHECK(classify_scale(1.0, e, c1) == ScaleClass::Critical1);

    ScaleSpec bad = s;
    bad.phi.exponent = e.theta;
    CHECK_THROWS_AS(classify_scale(0.5, e, bad), Error);
    bad = s;
    bad.kind = ScaleSpec::Kind::Outer;
    CHECK_THROWS_AS(classify_scale(0.5, e, bad), Error);
}

TEST_CASE("intermediate rates") {
    const auto e = derive_exponents({0.5, 0.5, 3});
    CHECK(rate_intermediate(e, 1.0, 0.5, ScaleClass::Slow, 10.0, 1e4) == Approx(0.1));
    CHECK(rate_intermediate(e, 1.0, 2.0, ScaleClass::Fast, 10.0, 1e4) == Approx(1e-4));
    for (double phi : {3.0, 30.0, 300.0})
        CHECK(rate_intermediate(e, e.p_crit, 0.7, ScaleClass::Slow, phi, 1e3) == Approx(std::pow(1e3, -0.7)));
}

TEST_CASE("outer and compact rates") {
    const auto e = derive_exponents({0.5, 0.5, 3});
    CHECK(rate_outer(e, 1.0, 2.0, 1e4) == Approx(std::pow(1e4, -0.5)));
    CHECK(rate_outer(e, 1.0, 1.0, 1e4) == Approx(std::pow(1e4, -0.5) * std::log(1e4)));
    CHECK(rate_outer(e, 1.0, 0.5, 1e4) == Approx(1.0));
    CHECK(rate_compact(2.0, 0.5) == Approx(1.5));
    CHECK(rate_compact(1.0, 0.5) == Approx(1.0));
    CHECK(rate_compact(1.5, 0.5) == Approx(1.5));

    const RateLaw l = rate_law_outer(e, 1.0, 2.0);
    CHECK(l.t_exponent == Approx(-0.5));
    CHECK(l.log_exponent == 0.0);
}
