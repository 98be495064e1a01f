#pragma once

/**
 * @file iteration.hpp
 * @brief Fixed-point iteration ṽ_{n+1} = J̃ ṽ_n.
 *
 * ṽ_0 is the payoff on every time level. Each iteration freezes the jump
 * term of iterate n at both time levels of a step, so iterate n+1 solves a
 * purely parabolic difference equation. Iterate errors contract in sup norm
 * by at most 1 − θ^M with θ = (1 − ½λξΔt)/(1 + ½λξΔt).
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <thread>
#include <vector>

#include "contract.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "jump_integral.hpp"
#include "jump_models.hpp"
#include "pde_engine.hpp"

namespace asianjd {

struct IterationConfig {
    int max_iterations = 20;
    double tolerance = 1e-6;  ///< sup-norm change between iterates over the whole lattice
    bool record_history = false;
    bool enforce_positivity = false;  ///< reject lattices with negative p⁺, p⁻ or 1 − p⁰
    int threads = 1;                  ///< workers for the jump-source rows

    void validate() const {
        if (max_iterations < 1) throw ConfigError("iteration.max_iterations must be at least 1");
        if (!(tolerance > 0.0)) throw ConfigError("iteration.tolerance must be positive");
        if (threads < 1) throw ConfigError("iteration.threads must be at least 1");
    }
};

/// 1 − θ^M, the per-iteration bound on the sup-norm error ratio.
inline double contraction_factor(double lambda, double xi, int time_steps, double maturity) {
    if (time_steps < 1) throw ConfigError("contraction_factor: M must be at least 1");
    const double h = 0.5 * lambda * xi * maturity / time_steps;
    if (!(h < 1.0)) throw ConfigError("contraction_factor: ½λξΔt must be below 1");
    const double theta = (1.0 - h) / (1.0 + h);
    return 1.0 - std::pow(theta, time_steps);
}

/// Continuous-time limit 1 − e^{−λξT} of contraction_factor as M → ∞.
inline double contraction_limit(double lambda, double xi, double maturity) {
    return -std::expm1(-lambda * xi * maturity);
}

/// Rate factor (1 − e^{−λη(T−t)})^n with η = max(ξ, 1). The scale constant
/// in front of it is not computable and is left to the caller.
inline double error_bound(int n, double lambda, double xi, double maturity, double t) {
    if (n < 0) throw ConfigError("error_bound: n must be non-negative");
    const double eta = std::max(xi, 1.0);
    return std::pow(-std::expm1(-lambda * eta * (maturity - t)), n);
}

struct IterationReport {
    int iterations = 0;                  ///< applications of J̃
    std::vector<double> deltas;          ///< E_n = sup |ṽ_{n+1} − ṽ_n|, n = 0, 1, ...
    std::vector<double> seconds;         ///< wall clock per iteration
    double contraction_factor = 0.0;     ///< 1 − θ^M for this configuration
    long sor_sweeps = 0;
    PositivityReport positivity;
    std::vector<ValueSurface> history;   ///< iterates ṽ_1..ṽ_n when recorded

    /// E_{n}/E_{n−1} for n ≥ 1 (zero where E_{n−1} is zero).
    std::vector<double> ratios() const {
        std::vector<double> r;
        for (std::size_t n = 1; n < deltas.size(); ++n)
            r.push_back(deltas[n - 1] > 0.0 ? deltas[n] / deltas[n - 1] : 0.0);
        return r;
    }

    double total_seconds() const {
        double s = 0.0;
        for (double x : seconds) s += x;
        return s;
    }
};

struct Solution {
    ValueSurface surface;
    IterationReport report;
};

inline ValueSurface payoff_surface(const SpaceTimeGrid& grid, const OptionContract& contract) {
    ValueSurface v(grid);
    for (int m = 0; m <= grid.time_steps(); ++m)
        for (int k = 0; k <= grid.space_steps(); ++k) v(k, m) = payoff(contract, grid.z(k));
    return v;
}

namespace detail {

/// Rows (P̃v)(·, m) for all m. Rows are independent, so splitting m across
/// threads leaves every value bit-identical.
inline void jump_source_rows(const JumpOperator& op, const ValueSurface& v, ValueSurface& out,
                             int threads) {
    const int rows = static_cast<int>(v.grid().row_count());
    auto work = [&](int begin, int end) {
        for (int m = begin; m < end; ++m) op.apply(v.row(m), m, out.row(m));
    };
    if (threads <= 1 || rows < 2) {
        work(0, rows);
        return;
    }
    const int n = std::min(threads, rows);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(work, rows * i / n, rows * (i + 1) / n);
    for (auto& t : pool) t.join();
}

/// One application of J̃: new surface from the jump source of `current`.
inline ValueSurface apply_iteration(const CrankNicolsonStepper& stepper, const JumpOperator& op,
                                    const ModelConstants& constants,
                                    const ValueSurface& current, const ValueSurface& terminal,
                                    int threads, long& sweeps) {
    const SpaceTimeGrid& grid = stepper.grid();
    const int M = grid.time_steps();
    ValueSurface next(grid);
    auto last = next.row(M);
    auto pay = terminal.row(M);
    std::copy(pay.begin(), pay.end(), last.begin());

    std::optional<ValueSurface> jumps;
    if (constants.lambda > 0.0) {
        jumps.emplace(grid);
        jump_source_rows(op, current, *jumps, threads);
    }
    const double half = 0.5 * constants.lambda * grid.dt();
    std::vector<double> source(grid.row_size(), 0.0);
    for (int m = M - 1; m >= 0; --m) {
        if (jumps) {
            auto a = jumps->row(m + 1);
            auto b = jumps->row(m);
            for (std::size_t k = 0; k < source.size(); ++k) source[k] = half * (a[k] + b[k]);
        }
        sweeps += stepper.step(next.row(m + 1), source, m, next.row(m));
    }
    return next;
}

inline double sup_distance(const ValueSurface& a, const ValueSurface& b) {
    double d = 0.0;
    auto x = a.data();
    auto y = b.data();
    for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
    return d;
}

}  // namespace detail

/**
 * Iterate to the fixed point on the given lattice.
 *
 * Stops once the sup-norm change between successive iterates drops below
 * `config.tolerance`; throws ConvergenceError after `config.max_iterations`.
 */
inline Solution solve(const OptionContract& contract, const JumpModel& model,
                      const SpaceTimeGrid& grid, const QuadratureGrid& quad,
                      const IterationConfig& config = {}, const SORConfig& sor = {}) {
    using clock = std::chrono::steady_clock;
    contract.validate();
    config.validate();
    sor.validate();
    const ModelConstants constants = compensator(model, contract.lambda);

    IterationReport report;
    report.positivity = check_positivity(grid, contract, constants);
    if (config.enforce_positivity) require_positivity(grid, contract, constants);
    report.contraction_factor = contraction_factor(constants.lambda, constants.xi,
                                                   grid.time_steps(), grid.maturity());

    const CrankNicolsonStepper stepper(grid, contract, constants, sor);
    const JumpOperator op(quad, grid, contract);
    const ValueSurface terminal = payoff_surface(grid, contract);

    ValueSurface current = terminal;
    for (int n = 1; n <= config.max_iterations; ++n) {
        const auto start = clock::now();
        ValueSurface next = detail::apply_iteration(stepper, op, constants, current,
                                                    terminal, config.threads, report.sor_sweeps);
        const double delta = detail::sup_distance(next, current);
        report.seconds.push_back(std::chrono::duration<double>(clock::now() - start).count());
        report.deltas.push_back(delta);
        report.iterations = n;
        current = std::move(next);
        if (config.record_history) report.history.push_back(current);
        if (delta < config.tolerance) return Solution{std::move(current), std::move(report)};
    }
    throw ConvergenceError("fixed-point iteration did not reach tolerance in " +
                               std::to_string(config.max_iterations) + " iterations (last delta " +
                               std::to_string(report.deltas.back()) + ")",
                           report.deltas.back());
}

}  // namespace asianjd
