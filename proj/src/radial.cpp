#include "fracasym/radial.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracasym/error.hpp"
#include "fracasym/special.hpp"

namespace fracasym {

namespace {

constexpr double kTiny = 1e-300;
using GL8 = boost::math::quadrature::gauss<double, 8>;

int sgn(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// int_c^d A^p (rho/anchor)^(q p) rho^(N-1) drho for a power tail, p finite.
double tail_power_integral(const PowerTail& t, double p, int dim, double c, double d) {
    if (t.amplitude == 0.0 || d <= c) return 0.0;
    const double s = t.exponent * p + dim;
    const double pref = std::pow(std::abs(t.amplitude), p) * std::pow(t.anchor, -t.exponent * p);
    if (std::isinf(d)) {
        if (s >= 0.0) return kInf;
        return pref * (-std::pow(c, s) / s);
    }
    if (c == 0.0) {
        if (s <= 0.0) return kInf;
        return pref * std::pow(d, s) / s;
    }
    if (std::abs(s) < 1e-14) return pref * std::log(d / c);
    return pref * (std::pow(d, s) - std::pow(c, s)) / s;
}

double tail_sup(const PowerTail& t, double c, double d) {
    if (t.amplitude == 0.0) return 0.0;
    if ((c == 0.0 && t.exponent < 0.0) || (std::isinf(d) && t.exponent > 0.0)) return kInf;
    double m = 0.0;
    if (c > 0.0 || t.exponent >= 0.0) m = std::max(m, std::abs(t(c)));
    if (!std::isinf(d)) m = std::max(m, std::abs(t(d)));
    return m;
}

// Signed int_c^d A (rho/anchor)^q rho^k drho.
double tail_moment(const PowerTail& t, double k, double c, double d) {
    if (t.amplitude == 0.0 || d <= c) return 0.0;
    const double s = t.exponent + k + 1.0;
    const double pref = t.amplitude * std::pow(t.anchor, -t.exponent);
    if (std::isinf(d)) {
        if (s >= 0.0) fail("integrability", "outer tail not integrable for the requested moment");
        return pref * (-std::pow(c, s) / s);
    }
    if (c == 0.0) {
        if (s <= 0.0) fail("integrability", "inner tail not integrable for the requested moment");
        return pref * std::pow(d, s) / s;
    }
    if (std::abs(s) < 1e-14) return pref * std::log(d / c);
    return pref * (std::pow(d, s) - std::pow(c, s)) / s;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

RadialGrid::RadialGrid(double lo, double hi, int n) : rho_min(lo), rho_max(hi), points(n) {
    if (!(lo > 0.0)) fail("domain", "grid rho_min must be positive");
    if (!(hi > lo)) fail("domain", "grid rho_max must exceed rho_min");
    if (n < 64) fail("domain", "grid needs at least 64 points");
}

double RadialGrid::log_step() const { return std::log(rho_max / rho_min) / (points - 1); }

double RadialGrid::node(int i) const {
    if (i == 0) return rho_min;
    if (i == points - 1) return rho_max;
    return rho_min * std::exp(i * log_step());
}

std::vector<double> RadialGrid::nodes() const {
    std::vector<double> v(points);
    for (int i = 0; i < points; ++i) v[i] = node(i);
    return v;
}

std::string RadialGrid::hash() const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g|%.17g|%d", rho_min, rho_max, points);
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(fnv1a(buf)));
    return out;
}

double PowerTail::operator()(double rho) const {
    if (amplitude == 0.0) return 0.0;
    return amplitude * std::pow(rho / anchor, exponent);
}

PowerTail fit_power_tail(const std::vector<double>& x, const std::vector<double>& y, double anchor,
                         double anchor_value) {
    PowerTail t;
    t.anchor = anchor;
    t.amplitude = anchor_value;
    const int s0 = sgn(anchor_value);
    bool ok = s0 != 0;
    for (double v : y) ok = ok && sgn(v) == s0;
    if (!ok) {
        // No consistent sign: constant continuation if the anchor is nonzero.
        t.exponent = 0.0;
        t.residual = std::numeric_limits<double>::infinity();
        if (s0 == 0) t.amplitude = 0.0;
        return t;
    }
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double den = n * sxx - sx * sx;
    t.exponent = den > 0 ? (n * sxy - sx * sy) / den : 0.0;
    const double icpt = (sy - t.exponent * sx) / n;
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::log(std::abs(y[i])) - icpt - t.exponent * std::log(x[i]);
        r2 += d * d;
    }
    t.residual = std::sqrt(r2 / n);
    return t;
}

RadialFunction::RadialFunction(RadialGrid grid, std::vector<double> samples, int tail_nodes)
    : grid_(grid), samples_(std::move(samples)) {
    if (static_cast<int>(samples_.size()) != grid_.points)
        fail("domain", "sample count does not match grid");
    for (double& v : samples_) {
        if (!std::isfinite(v)) fail("numerics", "non-finite sample in radial function");
        if (std::abs(v) < kTiny) v = 0.0;
    }
    nodes_ = grid_.nodes();
    const int m = std::clamp(tail_nodes, 2, grid_.points / 4);
    std::vector<double> xi(nodes_.begin(), nodes_.begin() + m), yi(samples_.begin(), samples_.begin() + m);
    std::vector<double> xo(nodes_.end() - m, nodes_.end()), yo(samples_.end() - m, samples_.end());
    inner_ = fit_power_tail(xi, yi, nodes_.front(), samples_.front());
    outer_ = fit_power_tail(xo, yo, nodes_.back(), samples_.back());
    if (!std::isfinite(outer_.residual)) outer_.amplitude = 0.0;
    build();
}

RadialFunction::RadialFunction(RadialGrid grid, std::vector<double> samples, PowerTail inner,
                               PowerTail outer)
    : grid_(grid), samples_(std::move(samples)), inner_(inner), outer_(outer) {
    if (static_cast<int>(samples_.size()) != grid_.points)
        fail("domain", "sample count does not match grid");
    for (double& v : samples_)
        if (std::abs(v) < kTiny) v = 0.0;
    nodes_ = grid_.nodes();
    build();
}

void RadialFunction::build() {
    const int n = grid_.points;
    const double h = grid_.log_step();
    logv_.assign(n, 0.0);
    sign_.assign(n, 0);
    slope_.assign(n, 0.0);
    logcell_.assign(n > 0 ? n - 1 : 0, 0);
    for (int i = 0; i < n; ++i) {
        sign_[i] = static_cast<signed char>(sgn(samples_[i]));
        logv_[i] = sign_[i] ? std::log(std::abs(samples_[i])) : 0.0;
    }
    auto same = [&](int i, int j) { return j >= 0 && j < n && sign_[j] == sign_[i] && sign_[i] != 0; };
    for (int i = 0; i < n; ++i) {
        if (!sign_[i]) continue;
        if (same(i, i - 2) && same(i, i - 1) && same(i, i + 1) && same(i, i + 2))
            slope_[i] = (logv_[i - 2] - 8 * logv_[i - 1] + 8 * logv_[i + 1] - logv_[i + 2]) / (12 * h);
        else if (same(i, i - 1) && same(i, i + 1))
            slope_[i] = (logv_[i + 1] - logv_[i - 1]) / (2 * h);
        else if (same(i, i + 1))
            slope_[i] = (logv_[i + 1] - logv_[i]) / h;
        else if (same(i, i - 1))
            slope_[i] = (logv_[i] - logv_[i - 1]) / h;
    }
    // Log-space cells need a sign-definite neighbourhood: log|f| is badly curved near a zero.
    for (int i = 0; i + 1 < n; ++i) {
        bool ok = same(i, i + 1);
        for (int j = std::max(0, i - 5); ok && j <= std::min(n - 1, i + 6); ++j) ok = same(i, j);
        logcell_[i] = ok ? 1 : 0;
    }
    // Fritsch-Carlson limiter on the log-log secant keeps monotone runs monotone.
    for (int i = 0; i + 1 < n; ++i) {
        if (!logcell_[i]) continue;
        const double delta = (logv_[i + 1] - logv_[i]) / h;
        if (delta == 0.0) {
            slope_[i] = slope_[i + 1] = 0.0;
            continue;
        }
        // Nodes that are local extrema of the data keep their slope.
        auto secant = [&](int j) { return same(j, j + 1) ? logv_[j + 1] - logv_[j] : 0.0; };
        const bool ext_i = i > 0 && secant(i - 1) * delta < 0.0;
        const bool ext_j = i + 2 < n && secant(i + 1) * delta < 0.0;
        if (ext_i || ext_j) continue;
        double a = slope_[i] / delta, b = slope_[i + 1] / delta;
        if (a < 0.0) slope_[i] = a = 0.0;
        if (b < 0.0) slope_[i + 1] = b = 0.0;
        const double r = a * a + b * b;
        if (r > 9.0) {
            const double tau = 3.0 / std::sqrt(r);
            slope_[i] = tau * a * delta;
            slope_[i + 1] = tau * b * delta;
        }
    }
}

double RadialFunction::operator()(double rho) const {
    if (samples_.empty()) return 0.0;
    if (rho < nodes_.front()) return inner_(rho);
    if (rho > nodes_.back()) return outer_(rho);
    const double h = grid_.log_step();
    const double u = std::log(rho / grid_.rho_min) / h;
    int i = static_cast<int>(std::floor(u));
    i = std::clamp(i, 0, grid_.points - 2);
    const double s = u - i;
    if (logcell_[i]) {
        const double s2 = s * s, s3 = s2 * s;
        const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
        const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
        const double L = h00 * logv_[i] + h10 * h * slope_[i] + h01 * logv_[i + 1] + h11 * h * slope_[i + 1];
        return sign_[i] * std::exp(L);
    }
    // Near a sign change or zero: cubic Lagrange through four neighbouring samples.
    if (i >= 1 && i + 2 < grid_.points) {
        const double* y = &samples_[i - 1];
        const double a = s + 1, b = s, c = s - 1, d = s - 2;
        return -b * c * d / 6 * y[0] + a * c * d / 2 * y[1] - a * b * d / 2 * y[2] + a * b * c / 6 * y[3];
    }
    return samples_[i] + s * (samples_[i + 1] - samples_[i]);
}

RadialFunction RadialFunction::scaled(double c) const {
    std::vector<double> v(samples_);
    for (double& x : v) x *= c;
    PowerTail in = inner_, out = outer_;
    in.amplitude *= c;
    out.amplitude *= c;
    return RadialFunction(grid_, std::move(v), in, out);
}

RadialFunction RadialFunction::rescaled(double rho_scale, double value_scale) const {
    RadialGrid g(grid_.rho_min * rho_scale, grid_.rho_max * rho_scale, grid_.points);
    std::vector<double> v(samples_);
    for (double& x : v) x *= value_scale;
    PowerTail in = inner_, out = outer_;
    in.anchor *= rho_scale;
    out.anchor *= rho_scale;
    in.amplitude *= value_scale;
    out.amplitude *= value_scale;
    return RadialFunction(g, std::move(v), in, out);
}

double sphere_area(int dim) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double lp_norm_annulus(const RadialFunction& u, double p, int dim, double a, double b,
                       bool* extrapolated) {
    if (!(b > a)) fail("domain", "lp_norm_annulus requires b > a");
    if (!(a >= 0.0)) fail("domain", "lp_norm_annulus requires a >= 0");
    if (!(p >= 1.0)) fail("domain", "lp_norm_annulus requires p >= 1");
    const auto& x = u.nodes();
    const double lo = x.front(), hi = x.back();
    if (extrapolated) *extrapolated = (a < lo) || (b > hi);
    const bool sup = std::isinf(p);
    double acc = 0.0;
    if (a < lo) {
        const double d = std::min(b, lo);
        acc = sup ? std::max(acc, tail_sup(u.inner_tail(), a, d))
                  : acc + tail_power_integral(u.inner_tail(), p, dim, a, d);
    }
    if (b > hi) {
        const double c = std::max(a, hi);
        acc = sup ? std::max(acc, tail_sup(u.outer_tail(), c, b))
                  : acc + tail_power_integral(u.outer_tail(), p, dim, c, b);
    }
    const double c0 = std::max(a, lo), c1 = std::min(b, hi);
    if (c1 > c0) {
        const double h = u.grid().log_step();
        int i0 = static_cast<int>(std::floor(std::log(c0 / lo) / h));
        i0 = std::clamp(i0, 0, static_cast<int>(x.size()) - 2);
        for (int i = i0; i + 1 < static_cast<int>(x.size()) && x[i] < c1; ++i) {
            const double l = std::max(x[i], c0), r = std::min(x[i + 1], c1);
            if (r <= l) continue;
            if (sup) {
                for (int k = 0; k <= 8; ++k) acc = std::max(acc, std::abs(u(l * std::pow(r / l, k / 8.0))));
            } else {
                auto f = [&](double s) {
                    const double rho = std::exp(s);
                    return std::pow(std::abs(u(rho)), p) * std::pow(rho, dim);
                };
                acc += GL8::integrate(f, std::log(l), std::log(r));
            }
        }
    }
    if (sup) return acc;
    return std::pow(sphere_area(dim) * acc, 1.0 / p);
}

double lp_norm_annulus(const std::function<double(double)>& u, const std::vector<double>& breaks,
                       double p, int dim, double a, double b) {
    if (!(b > a)) fail("domain", "lp_norm_annulus requires b > a");
    if (!(a >= 0.0)) fail("domain", "lp_norm_annulus requires a >= 0");
    if (std::isinf(b)) fail("domain", "callable norm requires a finite outer radius");
    if (!(p >= 1.0)) fail("domain", "lp_norm_annulus requires p >= 1");
    const bool sup = std::isinf(p);
    std::vector<double> cuts = {a, b};
    for (double c : breaks)
        if (c > a && c < b) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    double acc = 0.0;
    auto piece = [&](double l, double r) {
        if (sup) {
            for (int k = 0; k <= 8; ++k) {
                const double rho = l == 0.0 ? r * k / 8.0 : l * std::pow(r / l, k / 8.0);
                if (rho > 0.0 || dim == 0) acc = std::max(acc, std::abs(u(rho)));
            }
            return;
        }
        if (l == 0.0) {
            auto f = [&](double rho) { return std::pow(std::abs(u(rho)), p) * std::pow(rho, dim - 1); };
            acc += boost::math::quadrature::gauss<double, 20>::integrate(f, 0.0, r);
            return;
        }
        auto f = [&](double s) {
            const double rho = std::exp(s);
            return std::pow(std::abs(u(rho)), p) * std::pow(rho, dim);
        };
        acc += GL8::integrate(f, std::log(l), std::log(r));
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double l = cuts[i];
        const double r = cuts[i + 1];
        if (r <= l) continue;
        if (l == 0.0) {
            const double first = r * 1e-6;
            piece(0.0, first);
            l = first;
        }
        const int m = std::max(1, static_cast<int>(std::ceil(std::log(r / l) / 0.02)));
        for (int k = 0; k < m; ++k) piece(l * std::pow(r / l, double(k) / m), l * std::pow(r / l, double(k + 1) / m));
    }
    if (sup) return acc;
    return std::pow(sphere_area(dim) * acc, 1.0 / p);
}

double radial_moment(const RadialFunction& u, double k, double a, double b) {
    if (!(b > a)) fail("domain", "radial_moment requires b > a");
    const auto& x = u.nodes();
    const double lo = x.front(), hi = x.back();
    double acc = 0.0;
    if (a < lo) acc += tail_moment(u.inner_tail(), k, a, std::min(b, lo));
    if (b > hi) acc += tail_moment(u.outer_tail(), k, std::max(a, hi), b);
    const double c0 = std::max(a, lo), c1 = std::min(b, hi);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double l = std::max(x[i], c0), r = std::min(x[i + 1], c1);
        if (r <= l) continue;
        auto f = [&](double s) {
            const double rho = std::exp(s);
            return u(rho) * std::pow(rho, k + 1.0);
        };
        acc += GL8::integrate(f, std::log(l), std::log(r));
    }
    return acc;
}

double radial_mass(const RadialFunction& u, int dim) {
    return sphere_area(dim) * radial_moment(u, dim - 1.0, 0.0, kInf);
}

std::string to_csv(const RadialFunction& f, const std::string& column) {
    std::string out = "rho," + column + "\n";
    char buf[96];
    for (std::size_t i = 0; i < f.nodes().size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.nodes()[i], f.samples()[i]);
        out += buf;
    }
    return out;
}

void parse_csv(const std::string& text, std::vector<double>& rho, std::vector<double>& value) {
    rho.clear();
    value.clear();
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) fail("io", "malformed CSV row: " + line);
        rho.push_back(std::stod(line.substr(0, comma)));
        value.push_back(std::stod(line.substr(comma + 1)));
    }
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    static std::atomic<unsigned> counter{0};
    const fs::path tmp = target.string() + ".tmp" + std::to_string(::getpid()) + "_" + std::to_string(counter++);
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) fail("io", "cannot write " + tmp.string());
        os << content;
        if (!os) fail("io", "write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail("io", "cannot read " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace fracasym
