#include "fracasym/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace fracasym {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double den = n * sxx - sx * sx;
    return den > 0.0 ? (n * sxy - sx * sy) / den : std::numeric_limits<double>::quiet_NaN();
}

bool decreasing_below(const std::vector<double>& e, double tol) {
    if (e.empty()) return false;
    bool zero = true;
    for (double v : e) zero = zero && v == 0.0;
    if (zero) return true;
    for (std::size_t i = 1; i < e.size(); ++i)
        if (!(e[i] < e[i - 1])) return false;
    return e.back() <= tol;
}

void finalize(ConvergenceReport& r) {
    r.slope = loglog_slope(r.checkpoints, r.normalized_errors);
    if (r.verdict.empty()) r.verdict = decreasing_below(r.normalized_errors, r.tolerance) ? "pass" : "fail";
}

nlohmann::json json_number(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

namespace {
nlohmann::json series(const std::vector<double>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) a.push_back(json_number(x));
    return a;
}
}  // namespace

nlohmann::json to_json(const ConvergenceReport& r) {
    nlohmann::json j;
    j["theorem"] = r.theorem;
    j["params"] = r.params;
    j["forcing"] = r.forcing;
    j["p"] = json_number(r.p);
    j["scale"] = r.scale;
    j["checkpoints"] = series(r.checkpoints);
    j["raw_errors"] = series(r.raw_errors);
    j["normalized_errors"] = series(r.normalized_errors);
    j["slope"] = json_number(r.slope);
    j["truncation_radius"] = json_number(r.truncation_radius);
    j["verdict"] = r.verdict;
    nlohmann::json tol = r.tolerances;
    tol["final"] = r.tolerance;
    j["tolerances"] = tol;
    j["runtime_seconds"] = r.runtime_seconds;
    if (!r.details.empty()) j["details"] = r.details;
    return j;
}

std::string to_csv(const ConvergenceReport& r) {
    std::string out = "t,raw_error,normalized_error\n";
    char buf[128];
    for (std::size_t i = 0; i < r.checkpoints.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.checkpoints[i],
                      i < r.raw_errors.size() ? r.raw_errors[i] : 0.0,
                      i < r.normalized_errors.size() ? r.normalized_errors[i] : 0.0);
        out += buf;
    }
    return out;
}

}  // namespace fracasym
