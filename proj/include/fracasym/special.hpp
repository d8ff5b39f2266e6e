#pragma once

namespace fracasym {

/// Gamma function; throws on poles 0, -1, -2, ...
double gamma_fn(double x);

/// 1/Gamma(x), zero at the poles.
double rgamma(double x);

struct MLParams {
    double a = 1.0;  ///< order, in (0,1]
    double b = 1.0;  ///< second parameter, in (0,1]
};

/// Two-parameter Mittag-Leffler function E_{a,b}(z) on the closed negative axis z <= 0.
double mittag_leffler(MLParams p, double z);

/// -1/Gamma(-a): E_{a,a}(-x) ~ (-1/Gamma(-a)) x^{-2} as x -> inf.
double ml_tail_coefficient(double a);

/// Bessel J of half-integer order k + 1/2 (k >= 0) at x > 0.
double bessel_j_half(double order, double x);

/// Spherical Bessel j_n(x) for n >= 0, x >= 0.
double spherical_bessel_j(int n, double x);

/// j_n(x) / x^n, regular at x = 0 with value 1/(2n+1)!!.
double spherical_bessel_j_scaled(int n, double x);

/// k-th positive zero (k >= 1) of j_n.
double spherical_bessel_zero(int n, int k);

}  // namespace fracasym
