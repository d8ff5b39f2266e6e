#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracasym/params.hpp"

namespace fracasym {

/// Geometric grid rho_min * (rho_max/rho_min)^(i/(points-1)).
struct RadialGrid {
    double rho_min = 1e-3;
    double rho_max = 1e3;
    int points = 768;

    RadialGrid() = default;
    RadialGrid(double lo, double hi, int n);

    double node(int i) const;
    std::vector<double> nodes() const;
    double log_step() const;
    /// Stable hex digest of the grid definition.
    std::string hash() const;
};

/// Power law amplitude * (rho/anchor)^exponent used beyond the grid.
struct PowerTail {
    double anchor = 1.0;
    double amplitude = 0.0;
    double exponent = 0.0;
    double residual = 0.0;  ///< rms residual of the log-log fit
    double operator()(double rho) const;
};

/// Radial function sampled on a RadialGrid; cubic Hermite interpolation in
/// (log rho, log|value|) with sign tracking, power-law tails outside the grid.
class RadialFunction {
public:
    RadialFunction() = default;
    /// Tails fitted by least squares over `tail_nodes` nodes at each end.
    RadialFunction(RadialGrid grid, std::vector<double> samples, int tail_nodes = 6);
    RadialFunction(RadialGrid grid, std::vector<double> samples, PowerTail inner, PowerTail outer);

    double operator()(double rho) const;

    const RadialGrid& grid() const { return grid_; }
    const std::vector<double>& samples() const { return samples_; }
    const std::vector<double>& nodes() const { return nodes_; }
    const PowerTail& inner_tail() const { return inner_; }
    const PowerTail& outer_tail() const { return outer_; }
    bool empty() const { return samples_.empty(); }

    /// c * f(rho)
    RadialFunction scaled(double c) const;
    /// value_scale * f(rho / rho_scale), carried exactly onto the scaled grid.
    RadialFunction rescaled(double rho_scale, double value_scale) const;

private:
    void build();

    RadialGrid grid_;
    std::vector<double> nodes_, samples_;
    std::vector<double> logv_, slope_;  // log|v| and d log|v| / d log rho
    std::vector<signed char> sign_;
    std::vector<unsigned char> logcell_;  // 1 if cell i uses log-log Hermite
    PowerTail inner_, outer_;
};

/// Least-squares log-log fit over the given nodes; zero amplitude if values change sign.
PowerTail fit_power_tail(const std::vector<double>& x, const std::vector<double>& y, double anchor,
                         double anchor_value);

/// Surface area of the unit sphere in R^dim.
double sphere_area(int dim);

/// (omega_N int_a^b |u|^p rho^{N-1} drho)^{1/p}; p = inf gives the supremum.
/// Extrapolated tails are integrated in closed form; `extrapolated` reports their use.
double lp_norm_annulus(const RadialFunction& u, double p, int dim, double a, double b,
                       bool* extrapolated = nullptr);

/// Same norm for a callable on finite [a, b]; breaks mark points of reduced smoothness.
double lp_norm_annulus(const std::function<double(double)>& u, const std::vector<double>& breaks,
                       double p, int dim, double a, double b);

/// omega_N int_0^inf u rho^{N-1} drho (with closed-form tails).
double radial_mass(const RadialFunction& u, int dim);

/// int_a^b u(rho) rho^k drho with closed-form tails; b may be infinite.
double radial_moment(const RadialFunction& u, double k, double a, double b);

inline constexpr const char* kConvention = "angular-frequency, (2π)^{−N} inverse";

/// CSV with header `rho,<column>` at 17 significant digits.
std::string to_csv(const RadialFunction& f, const std::string& column = "value");
/// Parse a two-column CSV written by to_csv into (rho, value) columns.
void parse_csv(const std::string& text, std::vector<double>& rho, std::vector<double>& value);

/// Replace `path` atomically (write temp file, then rename).
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace fracasym
