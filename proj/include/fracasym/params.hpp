#pragma once

#include <limits>
#include <string>

namespace fracasym {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Orders of the equation d_t^alpha u + (-Delta)^beta u = f in dimension dim.
struct FracParams {
    double alpha = 0.5;
    double beta = 0.5;
    int dim = 3;
    bool validation_mode = false;  ///< admits alpha = 1 (heat-kernel oracles)
};

struct Exponents {
    double alpha = 0, beta = 0;
    int dim = 0;
    double theta = 0;       ///< alpha / (2 beta)
    double sigma_star = 0;  ///< 1 - alpha + dim * theta
    double p_star = 0;      ///< dim / (dim - 4 beta)
    double p_crit = 0;      ///< dim / (dim - 2 beta)
};

/// Throws Error("domain") naming the violated rule.
void validate(const FracParams& params);

Exponents derive_exponents(const FracParams& params);

/// sigma_star - dim*theta/p; p may be kInf.
double sigma_p(const Exponents& e, double p);

/// dim*p/(2 beta p + dim), or dim/(2 beta) for p = inf.
double q_critical(const Exponents& e, double p);

enum class ScaleClass { Slow, Critical1, Critical, Fast1, Fast, Compact, Outer };

std::string to_string(ScaleClass c);

/// phi(t) = coeff * t^exponent * (log t)^log_exponent.
struct PowerLog {
    double coeff = 1.0;
    double exponent = 0.0;
    double log_exponent = 0.0;
    double operator()(double t) const;
};

struct ScaleSpec {
    enum class Kind { Compact, Intermediate, Outer };
    Kind kind = Kind::Compact;
    double radius = 1.0;  ///< compact ball radius
    PowerLog phi;         ///< intermediate scale
    double nu = 1.0;      ///< inner annulus coefficient (intermediate and outer)
    double mu = 2.0;      ///< outer annulus coefficient (intermediate only)
};

std::string to_string(ScaleSpec::Kind k);

/// Symbolic classification of an intermediate scale against the case list.
ScaleClass classify_scale(double gamma, const Exponents& e, const ScaleSpec& scale);

double rate_intermediate(const Exponents& e, double p, double gamma, ScaleClass cls,
                         double phi_at_t, double t);
double rate_outer(const Exponents& e, double p, double gamma, double t);
/// Exponent min{gamma, 1 + alpha}.
double rate_compact(double gamma, double alpha);

/// A rate t^t_exponent (log t)^log_exponent, used for the `rates` table.
struct RateLaw {
    double t_exponent = 0.0;
    double log_exponent = 0.0;
};

RateLaw rate_law_intermediate(const Exponents& e, double p, double gamma, ScaleClass cls,
                              const PowerLog& phi);
RateLaw rate_law_outer(const Exponents& e, double p, double gamma);

}  // namespace fracasym
