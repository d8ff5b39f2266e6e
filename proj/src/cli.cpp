#include "fracasym/cli.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "fracasym/error.hpp"
#include "fracasym/kernels.hpp"
#include "fracasym/potentials.hpp"

namespace fracasym {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

double to_double(const std::string& key, const std::string& v) {
    const std::string s = lower(v);
    if (s == "inf" || s == "infinity") return kInf;
    double out = 0.0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out))
        fail("config", "type mismatch: " + key + " expects a number, got '" + v + "'");
    return out;
}

int to_int(const std::string& key, const std::string& v) {
    int out = 0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) fail("config", "type mismatch: " + key + " expects an integer, got '" + v + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    const std::string s = lower(v);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    fail("config", "type mismatch: " + key + " expects a boolean, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
    if (out.empty()) fail("config", "type mismatch: " + key + " expects a comma-separated list");
    return out;
}

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"problem", {"alpha", "beta", "dim", "validation_mode"}},
        {"forcing", {"family", "forcing", "gamma", "width", "radius", "amplitude"}},
        {"grid", {"rho_min", "rho_max", "points", "kernel_rho_min", "kernel_rho_max", "kernel_points",
                  "per_decade"}},
        {"verify", {"theorem", "p", "scale", "radius", "phi_coeff", "phi_exponent", "phi_log_exponent", "nu",
                    "mu", "times", "tolerance"}},
    };
    return s;
}

ScaleSpec::Kind parse_scale_kind(const std::string& v) {
    if (v == "compact") return ScaleSpec::Kind::Compact;
    if (v == "intermediate") return ScaleSpec::Kind::Intermediate;
    if (v == "outer") return ScaleSpec::Kind::Outer;
    fail("config", "unknown scale '" + v + "' (compact, intermediate, outer)");
}

ScaleSpec::Kind scale_for(Theorem t) {
    switch (t) {
        case Theorem::Compact: return ScaleSpec::Kind::Compact;
        case Theorem::Intermediate: return ScaleSpec::Kind::Intermediate;
        default: return ScaleSpec::Kind::Outer;
    }
}

void check_grid(const RadialGrid& g, const std::string& what) {
    if (!(g.rho_min > 0.0 && g.rho_max > g.rho_min)) fail("config", what + ": 0 < rho_min < rho_max violated");
    if (g.points < 16) fail("config", what + ": points >= 16 violated");
}

std::string fmt_time(double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string mu_tag(double mu) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", mu);
    return buf;
}

}  // namespace

std::string to_string(Command c) {
    switch (c) {
        case Command::Kernel: return "kernel";
        case Command::Potential: return "potential";
        case Command::Solve: return "solve";
        case Command::Rates: return "rates";
        case Command::Verify: return "verify";
    }
    return "unknown";
}

Command parse_command(const std::string& name) {
    for (Command c : {Command::Kernel, Command::Potential, Command::Solve, Command::Rates, Command::Verify})
        if (name == to_string(c)) return c;
    fail("config", "unknown command '" + name + "'");
}

RunConfig parse_config(const std::string& text) {
    std::map<std::string, std::map<std::string, std::string>> kv;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']') fail("config", where + ": malformed section header");
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (!schema().count(section)) fail("config", where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("config", where + ": expected key = value");
        if (section.empty()) fail("config", where + ": key outside a section");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (!schema().at(section).count(key)) fail("config", where + ": unknown key '" + key + "' in [" + section + "]");
        if (value.empty()) fail("config", where + ": empty value for '" + key + "'");
        if (kv[section].count(key)) fail("config", where + ": duplicate key '" + key + "' in [" + section + "]");
        kv[section][key] = value;
    }

    auto has = [&](const std::string& s, const std::string& k) { return kv.count(s) && kv[s].count(k); };
    auto get = [&](const std::string& s, const std::string& k) { return kv[s][k]; };
    auto require = [&](const std::string& s, const std::string& k) {
        if (!has(s, k)) fail("config", "missing required key '" + k + "' in [" + s + "]");
        return get(s, k);
    };

    RunConfig cfg;
    VerifyConfig& v = cfg.verify;
    v.params.alpha = to_double("alpha", require("problem", "alpha"));
    v.params.beta = to_double("beta", require("problem", "beta"));
    v.params.dim = to_int("dim", require("problem", "dim"));
    if (has("problem", "validation_mode")) v.params.validation_mode = to_bool("validation_mode", get("problem", "validation_mode"));

    if (has("forcing", "family") && has("forcing", "forcing"))
        fail("config", "'family' and 'forcing' are synonyms; give one");
    v.forcing.family = parse_family(lower(has("forcing", "forcing") ? get("forcing", "forcing") : require("forcing", "family")));
    v.forcing.gamma = to_double("gamma", require("forcing", "gamma"));
    if (has("forcing", "width")) v.forcing.width = to_double("width", get("forcing", "width"));
    if (has("forcing", "radius")) v.forcing.radius = to_double("radius", get("forcing", "radius"));
    if (has("forcing", "amplitude")) v.forcing.amplitude = to_double("amplitude", get("forcing", "amplitude"));

    if (has("grid", "rho_min")) v.grid.rho_min = to_double("rho_min", get("grid", "rho_min"));
    if (has("grid", "rho_max")) v.grid.rho_max = to_double("rho_max", get("grid", "rho_max"));
    if (has("grid", "points")) v.grid.points = to_int("points", get("grid", "points"));
    if (has("grid", "kernel_rho_min")) v.kernel_grid.rho_min = to_double("kernel_rho_min", get("grid", "kernel_rho_min"));
    if (has("grid", "kernel_rho_max")) v.kernel_grid.rho_max = to_double("kernel_rho_max", get("grid", "kernel_rho_max"));
    if (has("grid", "kernel_points")) v.kernel_grid.points = to_int("kernel_points", get("grid", "kernel_points"));
    if (has("grid", "per_decade")) {
        const int pd = to_int("per_decade", get("grid", "per_decade"));
        if (pd < 20) fail("config", "per_decade >= 20 violated");
        v.solver.transform.sampling.per_decade = pd;
        v.kernel.transform.sampling.per_decade = pd;
    }

    if (has("verify", "theorem")) {
        v.theorem = parse_theorem(lower(get("verify", "theorem")));
        cfg.theorem_set = true;
    }
    v.scale.kind = has("verify", "scale") ? parse_scale_kind(lower(get("verify", "scale"))) : scale_for(v.theorem);
    if (has("verify", "p")) v.p = to_double("p", get("verify", "p"));
    if (has("verify", "radius")) v.scale.radius = to_double("radius", get("verify", "radius"));
    if (has("verify", "phi_coeff")) v.scale.phi.coeff = to_double("phi_coeff", get("verify", "phi_coeff"));
    if (has("verify", "phi_exponent")) {
        v.scale.phi.exponent = to_double("phi_exponent", get("verify", "phi_exponent"));
    } else if (v.scale.kind == ScaleSpec::Kind::Intermediate) {
        // Default intermediate scale: the geometric mean of 1 and t^theta.
        v.scale.phi.exponent = v.params.alpha / (4.0 * v.params.beta);
    }
    if (has("verify", "phi_log_exponent"))
        v.scale.phi.log_exponent = to_double("phi_log_exponent", get("verify", "phi_log_exponent"));
    if (has("verify", "nu")) v.scale.nu = to_double("nu", get("verify", "nu"));
    if (has("verify", "mu")) v.scale.mu = to_double("mu", get("verify", "mu"));
    if (has("verify", "times")) v.times = to_list("times", get("verify", "times"));
    if (has("verify", "tolerance")) v.tolerance = to_double("tolerance", get("verify", "tolerance"));

    validate(cfg);
    return cfg;
}

void validate(const RunConfig& cfg) {
    const VerifyConfig& v = cfg.verify;
    try {
        validate(v.params);
        validate(v.forcing);
        check_grid(v.grid, "grid");
        check_grid(v.kernel_grid, "kernel grid");
        if (cfg.theorem_set) {
            if (scale_for(v.theorem) != v.scale.kind)
                fail("config", to_string(v.theorem) + " requires scale = " + to_string(scale_for(v.theorem)));
            validate(v);
        } else {
            if (!(v.p >= 1.0)) fail("config", "p >= 1 violated");
            for (std::size_t i = 0; i < v.times.size(); ++i)
                if (!(v.times[i] > 0.0) || (i > 0 && !(v.times[i] > v.times[i - 1])))
                    fail("config", "times must be positive and strictly increasing");
            if (v.scale.kind == ScaleSpec::Kind::Intermediate)
                classify_scale(v.forcing.gamma, derive_exponents(v.params), v.scale);
        }
        if (cfg.threads < 0) fail("config", "threads >= 0 violated");
    } catch (const Error& e) {
        if (e.code() == "config") throw;
        fail("config", e.what());
    }
}

void apply_runtime_options(RunConfig& cfg) {
    VerifyConfig& v = cfg.verify;
    v.kernel.cache_dir = cfg.cache_dir;
    v.kernel.transform.threads = cfg.threads;
    v.solver.transform.threads = cfg.threads;
}

std::string rates_csv(const RunConfig& cfg) {
    const VerifyConfig& v = cfg.verify;
    const Exponents e = derive_exponents(v.params);
    const double s = sigma_p(e, v.p);
    std::string regime = to_string(v.scale.kind), cls = "-";
    RateLaw law;
    switch (v.scale.kind) {
        case ScaleSpec::Kind::Compact:
            law.t_exponent = -rate_compact(v.forcing.gamma, e.alpha);
            break;
        case ScaleSpec::Kind::Intermediate: {
            const ScaleClass c = classify_scale(v.forcing.gamma, e, v.scale);
            cls = to_string(c);
            law = rate_law_intermediate(e, v.p, v.forcing.gamma, c, v.scale.phi);
            break;
        }
        case ScaleSpec::Kind::Outer:
            law = rate_law_outer(e, v.p, v.forcing.gamma);
            break;
    }
    char buf[512];
    std::string out = "regime,class,gamma,p,sigma_p,phi_exponent,phi_log_exponent,t_exponent,log_exponent\n";
    std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", regime.c_str(), cls.c_str(),
                  v.forcing.gamma, v.p, s, v.scale.phi.exponent, v.scale.phi.log_exponent, law.t_exponent,
                  law.log_exponent);
    out += buf;
    return out;
}

RunResult run_command(const RunConfig& in) {
    validate(in);
    if (in.command == Command::Verify && !in.theorem_set) fail("config", "missing required key 'theorem' in [verify]");
    RunConfig cfg = in;
    apply_runtime_options(cfg);
    const VerifyConfig& v = cfg.verify;
    const FracParams& P = v.params;
    const std::filesystem::path out = cfg.out_dir.empty() ? "." : cfg.out_dir;
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) fail("io", "cannot create output directory '" + out.string() + "': " + ec.message());

    RunResult res;
    auto emit = [&](const std::string& name, const std::string& content) {
        const std::string path = (out / name).string();
        write_file_atomic(path, content);
        res.files.push_back(path);
    };

    switch (cfg.command) {
        case Command::Kernel: {
            const KernelProfile G = build_y_profile(P, v.kernel_grid, v.kernel);
            emit("kernel_G.csv", to_csv(G.values, "G"));
            emit("kernel_G.json", dump(to_json(G)));
            const KernelProfile F = build_z_profile(P, v.kernel_grid, v.kernel);
            emit("kernel_F.csv", to_csv(F.values, "F"));
            emit("kernel_F.json", dump(to_json(F)));
            res.summary = {{"G", to_json(G)}, {"F", to_json(F)}};
            break;
        }
        case Command::Potential: {
            const ForcingSpec& fs = v.forcing;
            const int dim = P.dim;
            auto ghat = [&fs, dim](double r) { return fs.amplitude * forcing_symbol(fs, dim, r); };
            nlohmann::json summary = nlohmann::json::array();
            for (double mu : {2.0 * P.beta, 4.0 * P.beta}) {
                const RadialFunction I = riesz_potential_symbol(ghat, mu, dim, v.grid, v.solver.transform);
                const std::string stem = "potential_mu" + mu_tag(mu);
                emit(stem + ".csv", to_csv(I, "I"));
                nlohmann::json j = {{"mu", mu},
                                    {"dim", dim},
                                    {"c_mu", riesz_constant(mu, dim)},
                                    {"mass", spatial_mass(fs, dim)},
                                    {"forcing", to_json(fs)},
                                    {"convention", kConvention}};
                emit(stem + ".json", dump(j));
                summary.push_back(j);
            }
            res.summary = summary;
            break;
        }
        case Command::Solve: {
            nlohmann::json summary = nlohmann::json::array();
            for (double t : v.times) {
                const SolutionSlice S = solve_duhamel(v.forcing, P, t, v.grid, v.solver);
                nlohmann::json j = to_json(S);
                j["mass_quadrature"] = radial_mass(S.u, P.dim);
                j["mass_exact"] = solution_mass(v.forcing, P, t);
                const std::string stem = "solution_t" + fmt_time(t);
                emit(stem + ".csv", to_csv(S.u, "u"));
                emit(stem + ".json", dump(j));
                summary.push_back(j);
            }
            res.summary = summary;
            break;
        }
        case Command::Rates: {
            const std::string csv = rates_csv(cfg);
            emit("rates.csv", csv);
            std::string header, row;
            std::istringstream ss(csv);
            std::getline(ss, header);
            std::getline(ss, row);
            nlohmann::json j;
            std::istringstream hs(header), rs(row);
            std::string h, c;
            while (std::getline(hs, h, ',') && std::getline(rs, c, ',')) {
                if (h == "regime" || h == "class")
                    j[h] = c;
                else
                    j[h] = std::stod(c);
            }
            emit("rates.json", dump(j));
            res.summary = j;
            break;
        }
        case Command::Verify: {
            const ConvergenceReport r = run_verify(v);
            const std::string stem = "verify_" + r.theorem;
            emit(stem + ".json", dump(to_json(r)));
            emit(stem + ".csv", to_csv(r));
            res.summary = to_json(r);
            res.status = r.verdict == "fail" ? 1 : 0;
            break;
        }
    }
    return res;
}

int exit_status_for(const std::exception& e) {
    if (const auto* err = dynamic_cast<const Error*>(&e))
        return err->code() == "config" || err->code() == "domain" ? 2 : 1;
    return 1;
}

}  // namespace fracasym
