#pragma once

/**
 * @file pde_engine.hpp
 * @brief Crank–Nicolson step for ∂_t v + A(t)v − λξ v + λ·source = 0 with
 *        A(t) = −μ(q_t − z)∂_z + ½σ²(q_t − z)²∂²_z, solved by SOR.
 *
 * Per interior node k and time level m the scheme reads
 *
 *   (1 + p⁰_{k,m}) v(k,m) − p⁺_{k,m} v(k+1,m) − p⁻_{k,m} v(k−1,m)
 *     = p⁺_{k,m+1} v(k+1,m+1) + p⁻_{k,m+1} v(k−1,m+1) + (1 − p⁰_{k,m+1}) v(k,m+1)
 *       + source(k)
 *
 * where source carries the ½λΔt average of the jump term. The end nodes obey
 * v(0) = max(0, 2v(1) − v(2)) and v(K) = max(0, 2v(K−1) − v(K−2)).
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "contract.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "jump_models.hpp"

namespace asianjd {

struct SORConfig {
    double omega = 1.2;
    double tolerance = 1e-8;  ///< max absolute update per sweep
    int max_iterations = 10000;

    void validate() const {
        if (!(omega > 0.0 && omega < 2.0)) throw ConfigError("sor.omega must lie in (0, 2)");
        if (!(tolerance > 0.0)) throw ConfigError("sor.tolerance must be positive");
        if (max_iterations < 1) throw ConfigError("sor.max_iterations must be at least 1");
    }
};

struct CNCoefficients {
    double p_plus;
    double p_minus;
    double p_zero;
};

/// Coefficients at lattice node z_k = z_min + kΔz and time t_m.
inline CNCoefficients assemble(const SpaceTimeGrid& grid, const OptionContract& contract,
                               const ModelConstants& constants, int k, int m) {
    const double q = trading_strategy_q(contract, grid.t(m));
    const double d = (q - grid.z(k)) / grid.dz();
    const double diffusion = contract.sigma * contract.sigma * d * d;
    const double drift = constants.mu * d;
    const double dt = grid.dt();
    const double p_plus = 0.25 * (diffusion - drift) * dt;
    const double p_minus = 0.25 * (diffusion + drift) * dt;
    return {p_plus, p_minus, p_plus + p_minus + 0.5 * constants.lambda * constants.xi * dt};
}

/// End-node values from the zero-second-difference rule, floored at 0.
inline std::pair<double, double> boundary_values(std::span<const double> row) {
    const std::size_t K = row.size() - 1;
    return {std::max(0.0, 2.0 * row[1] - row[2]), std::max(0.0, 2.0 * row[K - 1] - row[K - 2])};
}

/// Smallest p⁺, p⁻ and 1 − p⁰ over interior nodes of all time levels.
struct PositivityReport {
    double min_p_plus = std::numeric_limits<double>::infinity();
    double min_p_minus = std::numeric_limits<double>::infinity();
    double min_one_minus_p_zero = std::numeric_limits<double>::infinity();
    long violations = 0;  ///< interior (k, m) nodes where any of the three is negative

    bool holds() const noexcept { return violations == 0; }
};

inline PositivityReport check_positivity(const SpaceTimeGrid& grid, const OptionContract& contract,
                                         const ModelConstants& constants) {
    PositivityReport rep;
    for (int m = 0; m <= grid.time_steps(); ++m) {
        for (int k = 1; k < grid.space_steps(); ++k) {
            const CNCoefficients c = assemble(grid, contract, constants, k, m);
            rep.min_p_plus = std::min(rep.min_p_plus, c.p_plus);
            rep.min_p_minus = std::min(rep.min_p_minus, c.p_minus);
            rep.min_one_minus_p_zero = std::min(rep.min_one_minus_p_zero, 1.0 - c.p_zero);
            if (c.p_plus < 0.0 || c.p_minus < 0.0 || 1.0 - c.p_zero < 0.0) ++rep.violations;
        }
    }
    return rep;
}

/// Throws ConfigError when the lattice violates coefficient positivity.
inline void require_positivity(const SpaceTimeGrid& grid, const OptionContract& contract,
                               const ModelConstants& constants) {
    const PositivityReport rep = check_positivity(grid, contract, constants);
    if (!rep.holds())
        throw ConfigError("grid violates coefficient positivity at " +
                          std::to_string(rep.violations) + " nodes (min p+ = " +
                          std::to_string(rep.min_p_plus) + ", min p- = " +
                          std::to_string(rep.min_p_minus) + ", min 1-p0 = " +
                          std::to_string(rep.min_one_minus_p_zero) + ")");
}

/**
 * Backward Crank–Nicolson stepper. Coefficients for every (k, m) are
 * tabulated once; step() is then a pure function of its row arguments.
 */
class CrankNicolsonStepper {
public:
    CrankNicolsonStepper(const SpaceTimeGrid& grid, const OptionContract& contract,
                         const ModelConstants& constants, SORConfig sor = {})
        : grid_(grid), sor_(sor) {
        sor_.validate();
        if (grid.space_steps() < 3)
            throw ConfigError("Crank-Nicolson stepper needs at least K = 3 space steps");
        const std::size_t n = grid.row_size() * grid.row_count();
        coeffs_.resize(n);
        for (int m = 0; m <= grid.time_steps(); ++m)
            for (int k = 1; k < grid.space_steps(); ++k)
                coeffs_[index(k, m)] = assemble(grid, contract, constants, k, m);
    }

    const SpaceTimeGrid& grid() const noexcept { return grid_; }
    const SORConfig& sor() const noexcept { return sor_; }

    const CNCoefficients& coefficients(int k, int m) const { return coeffs_[index(k, m)]; }

    /// Explicit half of the scheme: right-hand side at interior nodes of level m.
    void explicit_rhs(std::span<const double> v_next, std::span<const double> source, int m,
                      std::span<double> rhs) const {
        const int K = grid_.space_steps();
        rhs[0] = rhs[static_cast<std::size_t>(K)] = 0.0;
        for (int k = 1; k < K; ++k) {
            const CNCoefficients& c = coeffs_[index(k, m + 1)];
            rhs[k] = c.p_plus * v_next[k + 1] + c.p_minus * v_next[k - 1] +
                     (1.0 - c.p_zero) * v_next[k] + source[k];
        }
    }

    /**
     * Solve for level m given level m+1, starting SOR from v_next.
     * @return number of SOR sweeps used
     */
    int step(std::span<const double> v_next, std::span<const double> source, int m,
             std::span<double> out) const {
        const int K = grid_.space_steps();
        std::vector<double> rhs(grid_.row_size());
        explicit_rhs(v_next, source, m, rhs);
        std::copy(v_next.begin(), v_next.end(), out.begin());

        const double omega = sor_.omega;
        double update = 0.0;
        for (int sweep = 1; sweep <= sor_.max_iterations; ++sweep) {
            update = 0.0;
            for (int k = 1; k < K; ++k) {
                const CNCoefficients& c = coeffs_[index(k, m)];
                const double diag = 1.0 + c.p_zero;
                double gs;
                if (k == 1) {
                    // v(0) = max(0, 2v(1) − v(2)) couples back into row 1.
                    const double lin = (rhs[1] + (c.p_plus - c.p_minus) * out[2]) / (diag - 2.0 * c.p_minus);
                    gs = (2.0 * lin - out[2] >= 0.0) ? lin : (rhs[1] + c.p_plus * out[2]) / diag;
                } else if (k == K - 1) {
                    const double lin = (rhs[k] + (c.p_minus - c.p_plus) * out[k - 1]) / (diag - 2.0 * c.p_plus);
                    gs = (2.0 * lin - out[k - 1] >= 0.0) ? lin : (rhs[k] + c.p_minus * out[k - 1]) / diag;
                } else {
                    gs = (rhs[k] + c.p_plus * out[k + 1] + c.p_minus * out[k - 1]) / diag;
                }
                const double delta = omega * (gs - out[k]);
                out[k] += delta;
                update = std::max(update, std::abs(delta));
            }
            const auto [lo, hi] = boundary_values(out);
            out[0] = lo;
            out[static_cast<std::size_t>(K)] = hi;
            if (update < sor_.tolerance) return sweep;
        }
        throw SorError("SOR did not converge at time level " + std::to_string(m) +
                           " (last update " + std::to_string(update) + ")",
                       update);
    }

private:
    std::size_t index(int k, int m) const noexcept {
        return static_cast<std::size_t>(m) * grid_.row_size() + static_cast<std::size_t>(k);
    }

    SpaceTimeGrid grid_;
    SORConfig sor_;
    std::vector<CNCoefficients> coeffs_;
};

/// One-shot backward step; builds the coefficient table each call.
inline std::vector<double> step_backward(std::span<const double> v_next,
                                         std::span<const double> source, const SpaceTimeGrid& grid,
                                         const OptionContract& contract,
                                         const ModelConstants& constants, int m,
                                         const SORConfig& sor = {}) {
    if (m < 0 || m >= grid.time_steps()) throw ConfigError("step_backward: m must lie in [0, M)");
    CrankNicolsonStepper stepper(grid, contract, constants, sor);
    std::vector<double> out(grid.row_size());
    stepper.step(v_next, source, m, out);
    return out;
}

}  // namespace asianjd
