#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace fracasym {

/// Geometric checkpoint series of a convergence experiment.
struct ConvergenceReport {
    std::string theorem;
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json forcing = nlohmann::json::object();
    double p = 1.0;
    nlohmann::json scale = nlohmann::json::object();
    std::vector<double> checkpoints;
    std::vector<double> raw_errors;
    std::vector<double> normalized_errors;
    double slope = 0.0;              ///< log-log slope of normalized errors (NaN if undefined)
    double truncation_radius = 0.0;  ///< outer radius of the error region (inf if none)
    std::string verdict;             ///< "pass", "fail" or "not-applicable"
    double tolerance = 0.0;
    nlohmann::json tolerances = nlohmann::json::object();
    double runtime_seconds = 0.0;
    nlohmann::json details = nlohmann::json::object();  ///< auxiliary series and checks
};

/// Least-squares slope of log y against log x; NaN if any value is non-positive.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// True iff all values are zero, or strictly decreasing with the last below tol.
bool decreasing_below(const std::vector<double>& e, double tol);

/// Fill slope and verdict from the normalized series.
void finalize(ConvergenceReport& r);

nlohmann::json to_json(const ConvergenceReport& r);
std::string to_csv(const ConvergenceReport& r);

/// JSON number that maps non-finite values to null / strings.
nlohmann::json json_number(double v);

}  // namespace fracasym
