#include "fracasym/params.hpp"

#include <algorithm>
#include <cmath>

#include "fracasym/error.hpp"

namespace fracasym {

namespace {

constexpr double kExpTol = 1e-12;

bool same(double a, double b) { return std::abs(a - b) <= kExpTol * std::max(1.0, std::abs(b)); }

// Compare t^e1 (log t)^l1 against t^e2 (log t)^l2 as t -> inf: -1, 0, +1.
int compare_growth(double e1, double l1, double e2, double l2) {
    if (!same(e1, e2)) return e1 < e2 ? -1 : 1;
    if (!same(l1, l2)) return l1 < l2 ? -1 : 1;
    return 0;
}

}  // namespace

void validate(const FracParams& p) {
    if (!(p.alpha > 0.0 && p.alpha <= 1.0)) fail("domain", "alpha in (0,1] violated");
    if (p.alpha == 1.0 && !p.validation_mode)
        fail("domain", "alpha = 1 requires validation_mode");
    if (!(p.beta > 0.0 && p.beta <= 1.0)) fail("domain", "beta in (0,1] violated");
    if (!(p.dim > 4.0 * p.beta)) fail("domain", "dim > 4*beta violated");
    if (p.dim % 2 == 0) fail("domain", "even dim not supported (odd dim required)");
}

Exponents derive_exponents(const FracParams& p) {
    validate(p);
    Exponents e;
    e.alpha = p.alpha;
    e.beta = p.beta;
    e.dim = p.dim;
    const double n = p.dim;
    e.theta = p.alpha / (2.0 * p.beta);
    e.sigma_star = 1.0 - p.alpha + n * e.theta;
    e.p_star = n / (n - 4.0 * p.beta);
    e.p_crit = n / (n - 2.0 * p.beta);
    return e;
}

double sigma_p(const Exponents& e, double p) {
    if (!(p >= 1.0)) fail("domain", "p >= 1 required");
    if (std::isinf(p)) return e.sigma_star;
    return e.sigma_star - e.dim * e.theta / p;
}

double q_critical(const Exponents& e, double p) {
    if (!(p >= 1.0)) fail("domain", "p >= 1 required");
    if (std::isinf(p)) return e.dim / (2.0 * e.beta);
    return e.dim * p / (2.0 * e.beta * p + e.dim);
}

std::string to_string(ScaleClass c) {
    switch (c) {
        case ScaleClass::Slow: return "S";
        case ScaleClass::Critical1: return "C1";
        case ScaleClass::Critical: return "C";
        case ScaleClass::Fast1: return "F1";
        case ScaleClass::Fast: return "F";
        case ScaleClass::Compact: return "compact";
        case ScaleClass::Outer: return "outer";
    }
    return "?";
}

std::string to_string(ScaleSpec::Kind k) {
    switch (k) {
        case ScaleSpec::Kind::Compact: return "compact";
        case ScaleSpec::Kind::Intermediate: return "intermediate";
        case ScaleSpec::Kind::Outer: return "outer";
    }
    return "?";
}

double PowerLog::operator()(double t) const {
    double v = coeff * std::pow(t, exponent);
    if (log_exponent != 0.0) v *= std::pow(std::log(t), log_exponent);
    return v;
}

ScaleClass classify_scale(double gamma, const Exponents& e, const ScaleSpec& scale) {
    if (scale.kind != ScaleSpec::Kind::Intermediate)
        fail("domain", "classify_scale requires an intermediate scale");
    const double ex = scale.phi.exponent, lx = scale.phi.log_exponent;
    if (!(scale.phi.coeff > 0.0)) fail("domain", "phi coefficient must be positive");
    // phi must grow (phi >> 1) and stay below the diffusive scale (phi = o(t^theta)).
    if (compare_growth(ex, lx, 0.0, 0.0) <= 0 || compare_growth(ex, lx, e.theta, 0.0) >= 0)
        fail("domain", "phi is not an intermediate power-log scale");
    if (!(scale.nu > 0.0 && scale.nu < scale.mu)) fail("domain", "0 < nu < mu violated");

    if (gamma < 1.0) return ScaleClass::Slow;
    if (same(gamma, 1.0)) {
        const int c = compare_growth(ex, lx, e.theta, -1.0 / (2.0 * e.beta));
        if (c < 0) return ScaleClass::Slow;
        if (c == 0) return ScaleClass::Critical1;
        return ScaleClass::Fast1;
    }
    if (gamma < 1.0 + e.alpha && !same(gamma, 1.0 + e.alpha)) {
        const int c = compare_growth(ex, lx, (1.0 + e.alpha - gamma) / (2.0 * e.beta), 0.0);
        if (c < 0) return ScaleClass::Slow;
        if (c == 0) return ScaleClass::Critical;
        return ScaleClass::Fast;
    }
    return ScaleClass::Fast;
}

double rate_intermediate(const Exponents& e, double p, double gamma, ScaleClass cls,
                         double phi_at_t, double t) {
    const double s = sigma_p(e, p);
    switch (cls) {
        case ScaleClass::Slow:
        case ScaleClass::Critical1:
        case ScaleClass::Critical:
            return std::pow(t, -gamma) * std::pow(phi_at_t, (1.0 - s) / e.theta);
        case ScaleClass::Fast1:
            return std::pow(t, -(1.0 + e.alpha)) * std::log(t) *
                   std::pow(phi_at_t, (1.0 + e.alpha - s) / e.theta);
        case ScaleClass::Fast:
            return std::pow(t, -(1.0 + e.alpha)) * std::pow(phi_at_t, (1.0 + e.alpha - s) / e.theta);
        default: fail("domain", "rate_intermediate requires an intermediate class");
    }
}

double rate_outer(const Exponents& e, double p, double gamma, double t) {
    const RateLaw r = rate_law_outer(e, p, gamma);
    double v = std::pow(t, r.t_exponent);
    if (r.log_exponent != 0.0) v *= std::pow(std::log(t), r.log_exponent);
    return v;
}

double rate_compact(double gamma, double alpha) { return std::min(gamma, 1.0 + alpha); }

RateLaw rate_law_intermediate(const Exponents& e, double p, double gamma, ScaleClass cls,
                              const PowerLog& phi) {
    const double s = sigma_p(e, p);
    RateLaw r;
    switch (cls) {
        case ScaleClass::Slow:
        case ScaleClass::Critical1:
        case ScaleClass::Critical: {
            const double k = (1.0 - s) / e.theta;
            r.t_exponent = -gamma + k * phi.exponent;
            r.log_exponent = k * phi.log_exponent;
            break;
        }
        case ScaleClass::Fast1:
        case ScaleClass::Fast: {
            const double k = (1.0 + e.alpha - s) / e.theta;
            r.t_exponent = -(1.0 + e.alpha) + k * phi.exponent;
            r.log_exponent = k * phi.log_exponent + (cls == ScaleClass::Fast1 ? 1.0 : 0.0);
            break;
        }
        default: fail("domain", "rate_law_intermediate requires an intermediate class");
    }
    return r;
}

RateLaw rate_law_outer(const Exponents& e, double p, double gamma) {
    const double s = sigma_p(e, p);
    if (gamma < 1.0) return {1.0 - gamma - s, 0.0};
    if (gamma == 1.0) return {-s, 1.0};
    return {-s, 0.0};
}

}  // namespace fracasym
