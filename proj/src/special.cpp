#include "fracasym/special.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "fracasym/error.hpp"

namespace fracasym {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// log|Gamma(x)| and its sign, without touching the global signgam.
double lgamma_signed(double x, int* sign) {
    int s = 1;
    const double v = ::lgamma_r(x, &s);
    *sign = s;
    return v;
}

// Ascending series; accepted only when cancellation costs < 4 digits.
std::optional<double> ml_taylor(double a, double b, double x) {
    double sum = 0.0, sumabs = 0.0;
    const double lx = x > 0 ? std::log(x) : 0.0;
    for (int k = 0; k < 4000; ++k) {
        const double arg = b + a * k;
        int sg = 1;
        const double lg = lgamma_signed(arg, &sg);
        const double mag = k == 0 ? std::exp(-lg) : std::exp(k * lx - lg);
        const double term = (k % 2 == 0 ? 1.0 : -1.0) * sg * mag;
        sum += term;
        sumabs += mag;
        if (k > 2 && mag <= 1e-17 * std::abs(sum) && arg > 2.0) break;
        if (!std::isfinite(sumabs) || sumabs > 1e300) return std::nullopt;
    }
    if (sum <= 0.0 || sumabs > 1e3 * sum) return std::nullopt;
    return sum;
}

// Algebraic expansion sum_{k>=1} (-1)^{k+1} x^{-k} / Gamma(b - a k), stopped at
// the smallest term; rejected if it cannot reach full double precision.
std::optional<double> ml_asymptotic(double a, double b, double x) {
    const double lx = std::log(x);
    double sum = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int k = 1; k < 400; ++k) {
        const double arg = b - a * k;
        if (is_nonpositive_integer(arg)) continue;
        int sg = 1;
        const double lg = lgamma_signed(arg, &sg);
        const double mag = std::exp(-k * lx - lg);
        if (mag > prev && k > 3) break;  // divergent part of the series
        prev = mag;
        sum += (k % 2 == 1 ? 1.0 : -1.0) * sg * mag;
        if (mag <= 1e-17 * std::abs(sum)) {
            converged = true;
            break;
        }
    }
    if (!converged || sum <= 0.0) return std::nullopt;
    // Exponentially small contribution present for a > 2/3.
    if (a > 2.0 / 3.0) {
        const double expo = std::pow(x, 1.0 / a) * std::cos(kPi / a);
        if (expo > std::log(1e-17 * sum * a)) return std::nullopt;
    }
    return sum;
}

// Real-line representation for 0 < a < 1, 0 < b <= 1, after the substitution u = r^a.
double ml_integral(double a, double b, double x) {
    const double ca = std::cos(a * kPi), sa = std::sin(a * kPi);
    const double sb = std::sin(kPi * b), sba = std::sin(kPi * (b - a));
    const double pw = (1.0 - b) / a, ia = 1.0 / a;
    auto f = [=](double u) {
        if (u <= 0.0) return b == 1.0 ? x * sba / (x * x) : 0.0;
        const double den = u * u + 2.0 * x * u * ca + x * x;
        const double num = u * sb + x * sba;
        return std::exp(-std::pow(u, ia)) * std::pow(u, pw) * num / den;
    };
    const double u_max = std::pow(45.0, a);
    std::vector<double> cuts = {0.0, u_max};
    auto add = [&](double c) {
        if (c > 0.0 && c < u_max) cuts.push_back(c);
    };
    for (double s : {0.1, 0.3, 1.0, 3.0, 10.0}) add(s * x);
    add(0.5 * u_max);
    add(0.1 * u_max);
    if (ca < 0.0) {
        const double u0 = -x * ca, w = x * sa;
        for (double s : {-8.0, -2.0, -0.5, 0.0, 0.5, 2.0, 8.0}) add(u0 + s * w);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        // Mapped to [0, 1]: the Kronrod error estimate is not invariant under rescaling.
        const double lo = cuts[i], w = cuts[i + 1] - cuts[i];
        auto g = [&](double v) { return f(lo + w * v) * w; };
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 10, 1e-12);
    }
    return total / (a * kPi);
}

}  // namespace

double gamma_fn(double x) {
    if (is_nonpositive_integer(x)) fail("domain", "gamma_fn: pole at nonpositive integer");
    return std::tgamma(x);
}

double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x > 171.0) return 0.0;
    if (x < -170.0) {
        int sg = 1;
        const double lg = lgamma_signed(x, &sg);
        return sg * std::exp(-lg);
    }
    return 1.0 / std::tgamma(x);
}

double mittag_leffler(MLParams p, double z) {
    const double a = p.a, b = p.b;
    if (!(a > 0.0 && a <= 1.0)) fail("domain", "mittag_leffler: a in (0,1] required");
    if (!(b > 0.0 && b <= 1.0)) fail("domain", "mittag_leffler: b in (0,1] required");
    if (!(z <= 0.0)) fail("domain", "mittag_leffler: argument must be <= 0");
    const double x = -z;
    if (x == 0.0) return rgamma(b);
    if (a == 1.0) {
        if (b == 1.0) return std::exp(-x);
        fail("domain", "mittag_leffler: a = 1 supports b = 1 only");
    }
    if (x <= 10.0) {
        if (auto v = ml_taylor(a, b, x)) return *v;
    }
    if (x >= 5.0) {
        if (auto v = ml_asymptotic(a, b, x)) return *v;
    }
    return ml_integral(a, b, x);
}

double ml_tail_coefficient(double a) {
    if (!(a > 0.0 && a < 1.0)) fail("domain", "ml_tail_coefficient: a in (0,1) required");
    return -1.0 / std::tgamma(-a);
}

double spherical_bessel_j_scaled(int n, double x) {
    if (n < 0) fail("domain", "spherical Bessel order must be >= 0");
    x = std::abs(x);
    if (x < n + 2.0) {
        // sum_k (-x^2/2)^k / (k! (2n+2k+1)!!)
        double dfact = 1.0;
        for (int j = 1; j <= 2 * n + 1; j += 2) dfact *= j;
        double term = 1.0 / dfact, sum = term;
        const double h = -0.5 * x * x;
        for (int k = 1; k < 60; ++k) {
            term *= h / (k * (2.0 * n + 2.0 * k + 1.0));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return spherical_bessel_j(n, x) / std::pow(x, n);
}

double spherical_bessel_j(int n, double x) {
    if (n < 0) fail("domain", "spherical Bessel order must be >= 0");
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    if (x < n + 2.0) return spherical_bessel_j_scaled(n, x) * std::pow(x, n);
    const double s = std::sin(x), c = std::cos(x);
    double j0 = s / x;
    if (n == 0) return j0;
    double j1 = s / (x * x) - c / x;
    for (int k = 1; k < n; ++k) {
        const double j2 = (2.0 * k + 1.0) / x * j1 - j0;
        j0 = j1;
        j1 = j2;
    }
    return j1;
}

double bessel_j_half(double order, double x) {
    const double k = order - 0.5;
    if (!(k >= 0.0) || k != std::floor(k) || k > 1000.0)
        fail("domain", "bessel_j_half: order must be k + 1/2 with integer k >= 0");
    if (!(x > 0.0)) fail("domain", "bessel_j_half: x > 0 required");
    return std::sqrt(2.0 * x / kPi) * spherical_bessel_j(static_cast<int>(k), x);
}

double spherical_bessel_zero(int n, int k) {
    if (n < 0 || k < 1) fail("domain", "spherical_bessel_zero: n >= 0, k >= 1 required");
    if (n == 0) return k * kPi;
    // McMahon start for J_{n+1/2}, then Newton on j_n (j_n' = j_{n-1} - (n+1)/x j_n).
    const double nu = n + 0.5, m = 4.0 * nu * nu;
    const double bk = (k + 0.5 * nu - 0.25) * kPi;
    double z = bk - (m - 1.0) / (8.0 * bk) - 4.0 * (m - 1.0) * (7.0 * m - 31.0) / (3.0 * std::pow(8.0 * bk, 3));
    if (k <= 2 * n + 2) {
        // Start from the interlacing bracket: zeros of j_n lie between those of j_{n-1}.
        const double lo = spherical_bessel_zero(n - 1, k), hi = spherical_bessel_zero(n - 1, k + 1);
        double a = lo, c = hi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + c);
            if ((spherical_bessel_j(n, a) > 0) == (spherical_bessel_j(n, mid) > 0)) a = mid;
            else c = mid;
            if (c - a < 1e-15 * c) break;
        }
        return 0.5 * (a + c);
    }
    for (int it = 0; it < 50; ++it) {
        const double jn = spherical_bessel_j(n, z);
        const double dj = spherical_bessel_j(n - 1, z) - (n + 1.0) / z * jn;
        const double step = jn / dj;
        z -= step;
        if (std::abs(step) < 1e-15 * z) break;
    }
    return z;
}

}  // namespace fracasym
