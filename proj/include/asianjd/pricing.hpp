#pragma once

/**
 * @file pricing.hpp
 * @brief End-to-end commands behind the CLI: price, parity, mc and
 *        convergence studies.
 */

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "contract.hpp"
#include "errors.hpp"
#include "iteration.hpp"
#include "jump_models.hpp"
#include "montecarlo.hpp"
#include "report.hpp"

namespace asianjd {

struct PdePrice {
    double price;
    IterationReport report;
    double seconds;
};

/// Solve the configured contract and read the price at (z₀, 0).
inline PdePrice price_pde(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    cfg.validate();
    const JumpModel model = cfg.model.build();
    const SpaceTimeGrid grid = cfg.grid.build(cfg.contract);
    const QuadratureGrid quad =
        build_quadrature_grid(model, cfg.quadrature.truncation(model), cfg.quadrature.L);
    Solution sol = solve(cfg.contract, model, grid, quad, cfg.iteration, cfg.sor);
    const double price = price_from_surface(cfg.contract, sol.surface);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return PdePrice{price, std::move(sol.report), secs};
}

namespace detail {

inline ReportRow base_row(const RunConfig& cfg) {
    ReportRow r;
    r.config_id = cfg.id;
    r.zeta = cfg.contract.zeta;
    r.sigma = cfg.contract.sigma;
    r.K2 = cfg.contract.K2;
    r.lambda = cfg.contract.lambda;
    r.parity_gap = parity_gap(cfg.contract);
    return r;
}

}  // namespace detail

inline PriceReport price_command(const RunConfig& cfg) {
    PdePrice p = price_pde(cfg);
    PriceReport rep;
    rep.row = detail::base_row(cfg);
    rep.row.price = p.price;
    rep.row.iterations = p.report.iterations;
    rep.row.seconds = p.seconds;
    rep.iteration = std::move(p.report);
    rep.config_echo = to_text(cfg);
    return rep;
}

struct ParityReport {
    PriceReport call;
    PriceReport put;
    double c_minus_p = 0.0;
    double parity_gap = 0.0;
    double residual() const noexcept { return c_minus_p - parity_gap; }
};

/// Price call and put with identical numerics.
inline ParityReport parity_command(const RunConfig& cfg) {
    RunConfig c = cfg;
    c.contract.zeta = 1;
    ParityReport out;
    out.call = price_command(c);
    c.contract.zeta = -1;
    out.put = price_command(c);
    out.c_minus_p = *out.call.row.price - *out.put.row.price;
    out.parity_gap = parity_gap(cfg.contract);
    out.call.row.c_minus_p = out.c_minus_p;
    out.put.row.c_minus_p = out.c_minus_p;
    return out;
}

inline PriceReport mc_command(const RunConfig& cfg) {
    cfg.validate();
    const MCResult r = simulate_price(cfg.contract, cfg.model.build(), cfg.mc);
    PriceReport rep;
    rep.row = detail::base_row(cfg);
    rep.row.mc_price = r.price;
    rep.row.mc_stderr = r.std_error;
    rep.row.seconds = r.seconds;
    rep.mc = r;
    rep.config_echo = to_text(cfg);
    return rep;
}

// ---------------------------------------------------------------------------
// Convergence studies

enum class SweepKind { Truncation, Quadrature, Grid };

struct SweepPoint {
    double truncation = 0.0;  ///< Truncation
    int intervals = 0;        ///< Quadrature
    int time_steps = 0;       ///< Grid
    int space_steps = 0;      ///< Grid
};

struct Sweep {
    SweepKind kind;
    std::vector<SweepPoint> points;
};

/// "truncation:5,8,10" | "quadrature:200,300" | "grid:10x40,25x100"
inline Sweep parse_sweep(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("sweep: expected kind:values, got '" + text + "'");
    const std::string kind = text.substr(0, colon);
    Sweep s;
    if (kind == "truncation") s.kind = SweepKind::Truncation;
    else if (kind == "quadrature") s.kind = SweepKind::Quadrature;
    else if (kind == "grid") s.kind = SweepKind::Grid;
    else throw ConfigError("sweep: unknown kind '" + kind + "'");
    for (const std::string& item : detail::split_csv(text.substr(colon + 1))) {
        const std::string v = detail::trim(item);
        SweepPoint p;
        switch (s.kind) {
            case SweepKind::Truncation:
                p.truncation = detail::parse_double("sweep", v);
                break;
            case SweepKind::Quadrature:
                p.intervals = static_cast<int>(detail::parse_integer("sweep", v));
                break;
            case SweepKind::Grid: {
                const auto x = v.find('x');
                if (x == std::string::npos) throw ConfigError("sweep: grid points look like MxK, got '" + v + "'");
                p.time_steps = static_cast<int>(detail::parse_integer("sweep", v.substr(0, x)));
                p.space_steps = static_cast<int>(detail::parse_integer("sweep", v.substr(x + 1)));
                break;
            }
        }
        s.points.push_back(p);
    }
    if (s.points.empty()) throw ConfigError("sweep: no points given");
    return s;
}

struct StudyRow {
    std::string label;
    std::optional<double> call, put;
    double call_seconds = 0.0, put_seconds = 0.0;
    std::optional<double> parity_residual;  ///< (C − P) − parity gap
    std::optional<double> change;           ///< |call − previous call|
    std::string error;                      ///< empty on success
};

struct StudyResult {
    Sweep sweep;
    std::vector<StudyRow> rows;
    bool all_ok() const {
        for (const auto& r : rows)
            if (!r.error.empty()) return false;
        return true;
    }
};

/**
 * Configuration for one sweep point. The truncation sweep keeps the
 * quadrature node density fixed: L scales with N relative to the base
 * configuration, so only the support length changes.
 */
inline RunConfig sweep_config(const RunConfig& base, SweepKind kind, const SweepPoint& p) {
    RunConfig c = base;
    switch (kind) {
        case SweepKind::Truncation: {
            const JumpModel m = base.model.build();
            const double n0 = base.quadrature.truncation(m);
            c.quadrature.N = p.truncation;
            c.quadrature.L = static_cast<int>(std::lround(base.quadrature.L * p.truncation / n0));
            break;
        }
        case SweepKind::Quadrature:
            c.quadrature.L = p.intervals;
            break;
        case SweepKind::Grid:
            c.grid.M = p.time_steps;
            c.grid.K = p.space_steps;
            break;
    }
    return c;
}

inline std::string sweep_label(SweepKind kind, const SweepPoint& p) {
    switch (kind) {
        case SweepKind::Truncation: return detail::fmt_general(p.truncation);
        case SweepKind::Quadrature: return std::to_string(p.intervals);
        case SweepKind::Grid: return std::to_string(p.time_steps) + "x" + std::to_string(p.space_steps);
    }
    return {};
}

/// Run every sweep point; failures are recorded per row and the study goes on.
inline StudyResult convergence_command(const RunConfig& base, const Sweep& sweep) {
    StudyResult out{sweep, {}};
    std::optional<double> previous;
    for (const SweepPoint& p : sweep.points) {
        StudyRow row;
        row.label = sweep_label(sweep.kind, p);
        try {
            const RunConfig c = sweep_config(base, sweep.kind, p);
            const ParityReport pr = parity_command(c);
            row.call = pr.call.row.price;
            row.put = pr.put.row.price;
            row.call_seconds = pr.call.row.seconds;
            row.put_seconds = pr.put.row.seconds;
            row.parity_residual = pr.residual();
            if (previous) row.change = std::abs(*row.call - *previous);
            previous = row.call;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

inline constexpr std::string_view kStudyHeader =
    "sweep,point,call_price,call_seconds,put_price,put_seconds,parity_residual,change,status";

inline std::string to_csv(const StudyResult& s) {
    const char* kind = s.sweep.kind == SweepKind::Truncation   ? "truncation"
                       : s.sweep.kind == SweepKind::Quadrature ? "quadrature"
                                                               : "grid";
    auto opt = [](const std::optional<double>& v, bool price) {
        return v ? (price ? detail::fmt_price(*v) : detail::fmt_general(*v)) : std::string();
    };
    std::string out(kStudyHeader);
    out += '\n';
    for (const auto& r : s.rows) {
        std::string status = r.error.empty() ? "ok" : "error: " + r.error;
        for (char& ch : status)
            if (ch == ',' || ch == '\n') ch = ';';
        out += std::string(kind) + ',' + r.label + ',' + opt(r.call, true) + ',' +
               detail::fmt_general(r.call_seconds) + ',' + opt(r.put, true) + ',' +
               detail::fmt_general(r.put_seconds) + ',' + opt(r.parity_residual, true) + ',' +
               opt(r.change, true) + ',' + status + '\n';
    }
    return out;
}

}  // namespace asianjd
