#pragma once

/**
 * @file config.hpp
 * @brief Run configuration as flat `section.key = value` text.
 *
 * Lines starting with '#' and blank lines are ignored. Unknown keys and
 * malformed values are rejected with the offending line number. The full
 * schema lives in docs/config_schema.md.
 */

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "contract.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "iteration.hpp"
#include "jump_models.hpp"
#include "montecarlo.hpp"
#include "pde_engine.hpp"

namespace asianjd {

enum class ModelKind { DoubleExponential, LogNormal };

struct ModelBlock {
    ModelKind kind = ModelKind::DoubleExponential;
    double p = 0.6, eta1 = 25.0, eta2 = 25.0;
    double mean = -0.1, stdev = 0.3;

    JumpModel build() const {
        if (kind == ModelKind::DoubleExponential) return JumpModel::kou(p, eta1, eta2);
        return JumpModel::merton(mean, stdev);
    }
};

struct GridBlock {
    std::optional<double> z_min, z_max;
    double half_width = 0.5;  ///< used when the bounds are omitted
    int K = 400;
    int M = 100;

    SpaceTimeGrid build(const OptionContract& c) const {
        if (z_min.has_value() != z_max.has_value())
            throw ConfigError("grid.z_min and grid.z_max must be given together");
        if (z_min) return SpaceTimeGrid(*z_min, *z_max, K, M, c.T);
        return SpaceTimeGrid::centered(initial_state(c).z0, half_width, K, M, c.T);
    }
};

struct QuadratureBlock {
    std::optional<double> N;  ///< defaults per model: 10 (double exponential), 6 (lognormal)
    int L = 500;

    double truncation(const JumpModel& m) const { return N ? *N : default_truncation(m); }
};

struct RunConfig {
    std::string id = "run";
    OptionContract contract{1, 0.0, 90.0, 1.0, 0.15, 0.2, 1.0, 100.0};
    ModelBlock model;
    GridBlock grid;
    QuadratureBlock quadrature;
    IterationConfig iteration;
    SORConfig sor;
    MCConfig mc;
    std::string output;
    std::string sweep;  ///< "truncation:5,8" | "quadrature:200,300" | "grid:10x40,25x100"

    void validate() const {
        if (id.empty() || id.find_first_of(",\n") != std::string::npos)
            throw ConfigError("run.id must be non-empty and free of commas");
        contract.validate();
        const JumpModel m = model.build();
        (void)grid.build(contract);
        (void)build_quadrature_grid(m, quadrature.truncation(m), quadrature.L);
        iteration.validate();
        sor.validate();
        mc.validate();
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& key, const std::string& v) {
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(x))
        throw ConfigError(key + ": expected a finite number, got '" + v + "'");
    return x;
}

inline long long parse_integer(const std::string& key, const std::string& v) {
    errno = 0;
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE)
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return x;
}

inline std::uint64_t parse_unsigned(const std::string& key, const std::string& v) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || v.front() == '-' || end != v.c_str() + v.size() || errno == ERANGE)
        throw ConfigError(key + ": expected an unsigned integer, got '" + v + "'");
    return static_cast<std::uint64_t>(x);
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

/// Shortest of %.15g, %.16g, %.17g that reads back to the same double.
inline std::string format_double(double x) {
    char buf[40];
    for (int digits : {15, 16, 17}) {
        std::snprintf(buf, sizeof buf, "%.*g", digits, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

inline const std::map<std::string, Setter, std::less<>>& setters() {
    using C = RunConfig;
    static const std::map<std::string, Setter, std::less<>> table = {
        {"run.id", [](C& c, const std::string&, const std::string& v) { c.id = v; }},
        {"contract.zeta",
         [](C& c, const std::string& k, const std::string& v) {
             c.contract.zeta = static_cast<int>(parse_integer(k, v));
         }},
        {"contract.K1", [](C& c, const std::string& k, const std::string& v) { c.contract.K1 = parse_double(k, v); }},
        {"contract.K2", [](C& c, const std::string& k, const std::string& v) { c.contract.K2 = parse_double(k, v); }},
        {"contract.T", [](C& c, const std::string& k, const std::string& v) { c.contract.T = parse_double(k, v); }},
        {"contract.r", [](C& c, const std::string& k, const std::string& v) { c.contract.r = parse_double(k, v); }},
        {"contract.sigma", [](C& c, const std::string& k, const std::string& v) { c.contract.sigma = parse_double(k, v); }},
        {"contract.lambda", [](C& c, const std::string& k, const std::string& v) { c.contract.lambda = parse_double(k, v); }},
        {"contract.S0", [](C& c, const std::string& k, const std::string& v) { c.contract.S0 = parse_double(k, v); }},
        {"model.type",
         [](C& c, const std::string& k, const std::string& v) {
             if (v == "double_exponential") c.model.kind = ModelKind::DoubleExponential;
             else if (v == "lognormal") c.model.kind = ModelKind::LogNormal;
             else throw ConfigError(k + ": expected double_exponential or lognormal, got '" + v + "'");
         }},
        {"model.p", [](C& c, const std::string& k, const std::string& v) { c.model.p = parse_double(k, v); }},
        {"model.eta1", [](C& c, const std::string& k, const std::string& v) { c.model.eta1 = parse_double(k, v); }},
        {"model.eta2", [](C& c, const std::string& k, const std::string& v) { c.model.eta2 = parse_double(k, v); }},
        {"model.mean", [](C& c, const std::string& k, const std::string& v) { c.model.mean = parse_double(k, v); }},
        {"model.stdev", [](C& c, const std::string& k, const std::string& v) { c.model.stdev = parse_double(k, v); }},
        {"grid.z_min", [](C& c, const std::string& k, const std::string& v) { c.grid.z_min = parse_double(k, v); }},
        {"grid.z_max", [](C& c, const std::string& k, const std::string& v) { c.grid.z_max = parse_double(k, v); }},
        {"grid.half_width", [](C& c, const std::string& k, const std::string& v) { c.grid.half_width = parse_double(k, v); }},
        {"grid.K", [](C& c, const std::string& k, const std::string& v) { c.grid.K = static_cast<int>(parse_integer(k, v)); }},
        {"grid.M", [](C& c, const std::string& k, const std::string& v) { c.grid.M = static_cast<int>(parse_integer(k, v)); }},
        {"quadrature.N", [](C& c, const std::string& k, const std::string& v) { c.quadrature.N = parse_double(k, v); }},
        {"quadrature.L", [](C& c, const std::string& k, const std::string& v) { c.quadrature.L = static_cast<int>(parse_integer(k, v)); }},
        {"iteration.max_iterations", [](C& c, const std::string& k, const std::string& v) { c.iteration.max_iterations = static_cast<int>(parse_integer(k, v)); }},
        {"iteration.tolerance", [](C& c, const std::string& k, const std::string& v) { c.iteration.tolerance = parse_double(k, v); }},
        {"iteration.record_history", [](C& c, const std::string& k, const std::string& v) { c.iteration.record_history = parse_bool(k, v); }},
        {"iteration.enforce_positivity", [](C& c, const std::string& k, const std::string& v) { c.iteration.enforce_positivity = parse_bool(k, v); }},
        {"sor.omega", [](C& c, const std::string& k, const std::string& v) { c.sor.omega = parse_double(k, v); }},
        {"sor.tolerance", [](C& c, const std::string& k, const std::string& v) { c.sor.tolerance = parse_double(k, v); }},
        {"sor.max_iterations", [](C& c, const std::string& k, const std::string& v) { c.sor.max_iterations = static_cast<int>(parse_integer(k, v)); }},
        {"mc.paths", [](C& c, const std::string& k, const std::string& v) { c.mc.paths = static_cast<long>(parse_integer(k, v)); }},
        {"mc.time_steps", [](C& c, const std::string& k, const std::string& v) { c.mc.time_steps = static_cast<int>(parse_integer(k, v)); }},
        {"mc.seed", [](C& c, const std::string& k, const std::string& v) { c.mc.seed = parse_unsigned(k, v); }},
        {"mc.antithetic", [](C& c, const std::string& k, const std::string& v) { c.mc.antithetic = parse_bool(k, v); }},
        {"output.path", [](C& c, const std::string&, const std::string& v) { c.output = v; }},
        {"study.sweep", [](C& c, const std::string&, const std::string& v) { c.sweep = v; }},
    };
    return table;
}

}  // namespace detail

/// Apply one `key = value` assignment.
inline void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
    const auto& table = detail::setters();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown configuration key '" + key + "'");
    it->second(cfg, key, value);
}

/// Parse configuration text on top of `base` (defaults when omitted).
inline RunConfig parse_config(std::string_view text, RunConfig base = {}) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = detail::trim(std::string_view(t).substr(0, eq));
        const std::string value = detail::trim(std::string_view(t).substr(eq + 1));
        try {
            set_config_value(base, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

inline RunConfig load_config(const std::string& path, RunConfig base = {}) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open configuration file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

/// Lossless text form; parse_config(to_text(c)) reproduces c exactly.
inline std::string to_text(const RunConfig& c) {
    using detail::format_double;
    std::ostringstream o;
    o << "run.id = " << c.id << '\n';
    o << "contract.zeta = " << c.contract.zeta << '\n';
    o << "contract.K1 = " << format_double(c.contract.K1) << '\n';
    o << "contract.K2 = " << format_double(c.contract.K2) << '\n';
    o << "contract.T = " << format_double(c.contract.T) << '\n';
    o << "contract.r = " << format_double(c.contract.r) << '\n';
    o << "contract.sigma = " << format_double(c.contract.sigma) << '\n';
    o << "contract.lambda = " << format_double(c.contract.lambda) << '\n';
    o << "contract.S0 = " << format_double(c.contract.S0) << '\n';
    if (c.model.kind == ModelKind::DoubleExponential) {
        o << "model.type = double_exponential\n";
        o << "model.p = " << format_double(c.model.p) << '\n';
        o << "model.eta1 = " << format_double(c.model.eta1) << '\n';
        o << "model.eta2 = " << format_double(c.model.eta2) << '\n';
    } else {
        o << "model.type = lognormal\n";
        o << "model.mean = " << format_double(c.model.mean) << '\n';
        o << "model.stdev = " << format_double(c.model.stdev) << '\n';
    }
    if (c.grid.z_min) o << "grid.z_min = " << format_double(*c.grid.z_min) << '\n';
    if (c.grid.z_max) o << "grid.z_max = " << format_double(*c.grid.z_max) << '\n';
    o << "grid.half_width = " << format_double(c.grid.half_width) << '\n';
    o << "grid.K = " << c.grid.K << '\n';
    o << "grid.M = " << c.grid.M << '\n';
    if (c.quadrature.N) o << "quadrature.N = " << format_double(*c.quadrature.N) << '\n';
    o << "quadrature.L = " << c.quadrature.L << '\n';
    o << "iteration.max_iterations = " << c.iteration.max_iterations << '\n';
    o << "iteration.tolerance = " << format_double(c.iteration.tolerance) << '\n';
    o << "iteration.record_history = " << (c.iteration.record_history ? "true" : "false") << '\n';
    o << "iteration.enforce_positivity = " << (c.iteration.enforce_positivity ? "true" : "false") << '\n';
    o << "sor.omega = " << format_double(c.sor.omega) << '\n';
    o << "sor.tolerance = " << format_double(c.sor.tolerance) << '\n';
    o << "sor.max_iterations = " << c.sor.max_iterations << '\n';
    o << "mc.paths = " << c.mc.paths << '\n';
    o << "mc.time_steps = " << c.mc.time_steps << '\n';
    o << "mc.seed = " << c.mc.seed << '\n';
    o << "mc.antithetic = " << (c.mc.antithetic ? "true" : "false") << '\n';
    if (!c.output.empty()) o << "output.path = " << c.output << '\n';
    if (!c.sweep.empty()) o << "study.sweep = " << c.sweep << '\n';
    return o.str();
}

}  // namespace asianjd
