#include "fracasym/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "fracasym/error.hpp"
#include "fracasym/potentials.hpp"
#include "fracasym/report.hpp"
#include "fracasym/special.hpp"

namespace fracasym {

namespace {

bool is_heat_mode(const FracParams& p) { return p.alpha == 1.0; }

std::string resolve_cache_dir(const KernelOptions& opt) {
    if (!opt.use_cache) return {};
    if (!opt.cache_dir.empty()) return opt.cache_dir;
    const char* env = std::getenv("FRACASYM_CACHE");
    return env ? std::string(env) : std::string();
}

nlohmann::json tail_json(const PowerTail& t) {
    return {{"anchor", t.anchor},
            {"amplitude", t.amplitude},
            {"exponent", t.exponent},
            {"residual", json_number(t.residual)}};
}

PowerTail tail_from_json(const nlohmann::json& j) {
    PowerTail t;
    t.anchor = j.at("anchor").get<double>();
    t.amplitude = j.at("amplitude").get<double>();
    t.exponent = j.at("exponent").get<double>();
    t.residual = j.at("residual").is_number() ? j.at("residual").get<double>() : kInf;
    return t;
}

RadialFunction compute_values(KernelProfile::Which which, const FracParams& params, const RadialGrid& grid,
                              const TransformOptions& topt) {
    const double a = params.alpha, b2 = 2.0 * params.beta;
    const int dim = params.dim;
    if (is_heat_mode(params)) {
        // E_1 = E_{1,1} = exp: the symbol is cheap and smooth, evaluated in place.
        return radial_fourier_inverse([b2](double r) { return std::exp(-std::pow(r, b2)); }, dim, grid, topt);
    }
    if (which == KernelProfile::Which::Y) {
        auto sym = [a, b2](double r) { return mittag_leffler({a, a}, -std::pow(r, b2)); };
        return radial_fourier_inverse_split(sym, ml_tail_coefficient(a), 2.0 * b2, dim, grid, topt);
    }
    auto sym = [a, b2](double r) { return mittag_leffler({a, 1.0}, -std::pow(r, b2)); };
    return radial_fourier_inverse_split(sym, rgamma(1.0 - a), b2, dim, grid, topt);
}

void fill_derived(KernelProfile& prof) {
    if (prof.which != KernelProfile::Which::Y) return;
    prof.kappa = estimate_kappa(prof);
    prof.constant_A = constant_A(prof);
    prof.bounds = validate_bounds(prof);
}

nlohmann::json sidecar(const KernelProfile& prof) {
    const RadialGrid& g = prof.values.grid();
    nlohmann::json j = to_json(prof);
    j["grid"] = {{"rho_min", g.rho_min}, {"rho_max", g.rho_max}, {"points", g.points}, {"hash", g.hash()}};
    j["inner_tail"] = tail_json(prof.values.inner_tail());
    j["outer_tail"] = tail_json(prof.values.outer_tail());
    j["convention"] = kConvention;
    return j;
}

bool try_load(const std::string& stem, const RadialGrid& grid, KernelProfile& prof) {
    namespace fs = std::filesystem;
    const std::string csv = stem + ".csv", meta = stem + ".json";
    if (!fs::exists(csv) || !fs::exists(meta)) return false;
    try {
        const auto j = nlohmann::json::parse(read_file(meta));
        if (j.at("grid").at("hash").get<std::string>() != grid.hash()) return false;
        std::vector<double> rho, val;
        parse_csv(read_file(csv), rho, val);
        if (static_cast<int>(val.size()) != grid.points) return false;
        prof.values = RadialFunction(grid, std::move(val), tail_from_json(j.at("inner_tail")),
                                     tail_from_json(j.at("outer_tail")));
    } catch (const std::exception&) {
        return false;  // unreadable or partial entry: recompute
    }
    prof.from_cache = true;
    return true;
}

KernelProfile build_profile(KernelProfile::Which which, const FracParams& params, const RadialGrid& grid,
                            const KernelOptions& opt) {
    validate(params);
    if (params.dim % 2 == 0) fail("domain", "even dimensions are not supported");
    KernelProfile prof;
    prof.params = params;
    prof.exps = derive_exponents(params);
    prof.which = which;
    const std::string dir = resolve_cache_dir(opt);
    const std::string stem = dir.empty() ? std::string() : dir + "/" + cache_stem(which, params, grid);
    if (stem.empty() || !try_load(stem, grid, prof)) {
        prof.values = compute_values(which, params, grid, opt.transform);
        prof.from_cache = false;
    }
    fill_derived(prof);
    if (!stem.empty() && !prof.from_cache) {
        write_file_atomic(stem + ".csv", to_csv(prof.values));
        write_file_atomic(stem + ".json", sidecar(prof).dump(2));
    }
    return prof;
}

// Mean and max relative deviation of w over nodes in [lo, hi].
std::pair<double, double> plateau(const std::vector<double>& x, const std::vector<double>& w, double lo,
                                  double hi) {
    double sum = 0.0;
    int cnt = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] >= lo * (1 - 1e-12) && x[i] <= hi * (1 + 1e-12)) {
            sum += w[i];
            ++cnt;
        }
    if (cnt == 0) return {0.0, kInf};
    const double mean = sum / cnt;
    double dev = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] >= lo * (1 - 1e-12) && x[i] <= hi * (1 + 1e-12)) dev = std::max(dev, std::abs(w[i] / mean - 1.0));
    return {mean, dev};
}

}  // namespace

std::string cache_stem(const KernelProfile::Which which, const FracParams& params, const RadialGrid& grid) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s_a%.17g_b%.17g_N%d_%s", which == KernelProfile::Which::Y ? "G" : "F",
                  params.alpha, params.beta, params.dim, grid.hash().c_str());
    return buf;
}

KernelProfile build_z_profile(const FracParams& params, const RadialGrid& grid, const KernelOptions& opt) {
    return build_profile(KernelProfile::Which::Z, params, grid, opt);
}

KernelProfile build_y_profile(const FracParams& params, const RadialGrid& grid, const KernelOptions& opt) {
    return build_profile(KernelProfile::Which::Y, params, grid, opt);
}

KappaFit estimate_kappa(const KernelProfile& prof) {
    KappaFit k;
    if (prof.which != KernelProfile::Which::Y || is_heat_mode(prof.params)) {
        k.note = "not applicable: bounded profile";
        return k;
    }
    k.applicable = true;
    const int dim = prof.params.dim;
    const double s = dim - 4.0 * prof.params.beta;
    const auto& x = prof.values.nodes();
    std::vector<double> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = std::pow(x[i], s) * prof.values.samples()[i];
    // Candidate decades start at successive nodes below rho = 0.1.
    double best_dev = kInf;
    for (std::size_t i = 0; i < x.size() && x[i] * 10.0 <= x.back(); ++i) {
        const double lo = x[i], hi = 10.0 * x[i];
        if (lo > 0.1) break;
        const auto [mean, dev] = plateau(x, w, lo, hi);
        if (dev < best_dev) {
            best_dev = dev;
            k.value = mean;
            k.variation = dev;
            k.decade_lo = lo;
            k.decade_hi = hi;
        }
        if (dev < 0.01) {
            k.ok = true;
            return k;
        }
    }
    k.note = best_dev >= 0.05 ? "fit failure: variation >= 5% over every candidate decade"
                              : "no decade with variation below 1%";
    return k;
}

double constant_A(const KernelProfile& prof) {
    if (prof.which != KernelProfile::Which::Y) fail("domain", "constant_A requires the Y profile");
    const int dim = prof.params.dim;
    const double b2 = 2.0 * prof.params.beta;
    const double k = dim - 1.0 - b2;
    const PowerTail& in = prof.values.inner_tail();
    const PowerTail& out = prof.values.outer_tail();
    if (in.amplitude != 0.0 && !(in.exponent + k + 1.0 > 0.0))
        fail("integrability", "inner tail of G not integrable against rho^{N-1-2beta}");
    if (out.amplitude != 0.0 && !(out.exponent + k + 1.0 < 0.0))
        fail("integrability", "outer tail of G not integrable against rho^{N-1-2beta}");
    return radial_moment(prof.values, k, 0.0, kInf) / prof.exps.theta;
}

BoundReport validate_bounds(const KernelProfile& prof) {
    BoundReport b;
    if (prof.which != KernelProfile::Which::Y || is_heat_mode(prof.params)) {
        b.note = "not applicable: bounded profile";
        return b;
    }
    b.applicable = true;
    const int dim = prof.params.dim;
    const double beta = prof.params.beta;
    const double s = dim - 4.0 * beta;
    const auto& x = prof.values.nodes();
    const auto& v = prof.values.samples();
    b.interior_min = kInf;
    for (std::size_t i = 0; i < x.size() && x[i] <= 1.0; ++i) {
        const double w = std::pow(x[i], s) * v[i];
        b.interior_min = std::min(b.interior_min, w);
        b.interior_max = std::max(b.interior_max, w);
    }
    b.interior_ratio = b.interior_min > 0.0 ? b.interior_max / b.interior_min : kInf;
    b.interior_pass = b.interior_min > 0.0 && b.interior_ratio <= 3.0;

    b.exterior_target = -(dim + 2.0 * beta);
    if (beta < 1.0) {
        b.exterior_applicable = true;
        std::vector<double> xs, ys;
        const double hi = 0.5 * prof.values.grid().rho_max;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] >= 5.0 && x[i] <= hi) {
                xs.push_back(x[i]);
                ys.push_back(v[i]);
            }
        b.exterior_slope = loglog_slope(xs, ys);
        b.exterior_rel_error = std::abs(b.exterior_slope / b.exterior_target - 1.0);
        b.exterior_pass = std::isfinite(b.exterior_slope) && b.exterior_rel_error <= 0.03;
    } else {
        b.note = "exponential-type tail, algebraic fit not applicable";
    }

    b.global_constant = b.interior_max;
    b.global_pass = true;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (v[i] > b.global_constant * std::pow(x[i], -s) * (1.0 + 1e-12)) b.global_pass = false;
    return b;
}

double evaluate_Y(const KernelProfile& prof, double rho, double t) {
    if (prof.which != KernelProfile::Which::Y) fail("domain", "evaluate_Y requires the Y profile");
    if (!(t > 0.0)) fail("domain", "t must be positive");
    if (!(rho >= 0.0)) fail("domain", "rho must be nonnegative");
    const double scale = std::pow(t, -prof.exps.sigma_star);
    if (rho == 0.0) {
        if (!is_heat_mode(prof.params)) fail("singular", "Y is infinite at the origin");
        return scale * prof.values.samples().front();
    }
    return scale * prof.values(rho * std::pow(t, -prof.exps.theta));
}

double evaluate_Z(const KernelProfile& prof, double rho, double t) {
    if (prof.which != KernelProfile::Which::Z) fail("domain", "evaluate_Z requires the Z profile");
    if (!(t > 0.0)) fail("domain", "t must be positive");
    if (!(rho >= 0.0)) fail("domain", "rho must be nonnegative");
    const double scale = std::pow(t, -prof.params.dim * prof.exps.theta);
    if (rho == 0.0) {
        if (!is_heat_mode(prof.params)) fail("singular", "Z is infinite at the origin");
        return scale * prof.values.samples().front();
    }
    return scale * prof.values(rho * std::pow(t, -prof.exps.theta));
}

RadialFunction kernel_slice(const KernelProfile& prof, double t) {
    if (!(t > 0.0)) fail("domain", "t must be positive");
    const double th = prof.exps.theta;
    const double expo = prof.which == KernelProfile::Which::Y ? prof.exps.sigma_star : prof.params.dim * th;
    return prof.values.rescaled(std::pow(t, th), std::pow(t, -expo));
}

double time_integral_Y(const KernelProfile& prof, double rho, double T) {
    if (prof.which != KernelProfile::Which::Y) fail("domain", "time_integral_Y requires the Y profile");
    if (!(rho > 0.0 && T > 0.0)) fail("domain", "rho and T must be positive");
    const int dim = prof.params.dim;
    const double b2 = 2.0 * prof.params.beta;
    const double th = prof.exps.theta;
    // s -> xi = rho s^{-theta} turns the time integral into a radial moment of G.
    const double xi_T = rho * std::pow(T, -th);
    return std::pow(rho, b2 - dim) / th * radial_moment(prof.values, dim - 1.0 - b2, xi_T, kInf);
}

nlohmann::json to_json(const BoundReport& b) {
    nlohmann::json j;
    j["applicable"] = b.applicable;
    if (!b.note.empty()) j["note"] = b.note;
    if (!b.applicable) return j;
    j["interior"] = {{"min", b.interior_min},
                     {"max", b.interior_max},
                     {"ratio", json_number(b.interior_ratio)},
                     {"pass", b.interior_pass}};
    if (b.exterior_applicable)
        j["exterior"] = {{"slope", json_number(b.exterior_slope)},
                         {"target", b.exterior_target},
                         {"rel_error", json_number(b.exterior_rel_error)},
                         {"pass", b.exterior_pass}};
    else
        j["exterior"] = {{"applicable", false}};
    j["global"] = {{"constant", b.global_constant}, {"pass", b.global_pass}};
    return j;
}

nlohmann::json to_json(const KernelProfile& prof) {
    nlohmann::json j;
    j["which"] = prof.which == KernelProfile::Which::Y ? "G" : "F";
    j["alpha"] = prof.params.alpha;
    j["beta"] = prof.params.beta;
    j["dim"] = prof.params.dim;
    j["theta"] = prof.exps.theta;
    j["sigma_star"] = prof.exps.sigma_star;
    j["inner_exponent"] = prof.values.inner_tail().exponent;
    j["outer_exponent"] = prof.values.outer_tail().exponent;
    j["from_cache"] = prof.from_cache;
    if (prof.which == KernelProfile::Which::Y) {
        if (prof.kappa.applicable) {
            j["kappa"] = {{"value", prof.kappa.value},
                          {"variation", prof.kappa.variation},
                          {"decade", {prof.kappa.decade_lo, prof.kappa.decade_hi}},
                          {"ok", prof.kappa.ok}};
            if (!prof.kappa.note.empty()) j["kappa"]["note"] = prof.kappa.note;
        } else {
            j["kappa"] = "not applicable";
        }
        j["constant_A"] = prof.constant_A;
        j["bound_report"] = to_json(prof.bounds);
    }
    return j;
}

}  // namespace fracasym
