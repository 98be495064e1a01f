#pragma once

/**
 * @file jump_integral.hpp
 * @brief Discrete jump operator
 *
 *   (P̃f)(z_k, t_m) = Σ_l W_l · f̃(z_k e^{−x_l} + q_{t_m}(1 − e^{−x_l}))
 *
 * with W_l = e^{x_l}·(trapezoidal weight of node l) and f̃ the linear
 * interpolant of the row on the z-lattice. Arguments beyond the lattice are
 * continued linearly with the slope of the outermost cell and floored at 0.
 */

#include <algorithm>
#include <cassert>
#include <cmath>
#include <span>
#include <vector>

#include "contract.hpp"
#include "grid.hpp"
#include "jump_models.hpp"

namespace asianjd {

namespace detail {

/// Interpolate at fractional lattice coordinate s = (z* − z_min)/Δz.
inline double interpolate_at(std::span<const double> f, double s) {
    const int K = static_cast<int>(f.size()) - 1;
    if (s <= 0.0) {
        const double v = f[0] + (f[0] - f[1]) * (-s);
        return v > 0.0 ? v : 0.0;
    }
    if (s >= K) {
        const double v = f[K] + (f[K] - f[K - 1]) * (s - K);
        return v > 0.0 ? v : 0.0;
    }
    const int k = static_cast<int>(s);
    const double w = s - k;
    return (1.0 - w) * f[k] + w * f[k + 1];
}

}  // namespace detail

/// Value of the lattice row at an arbitrary z*.
inline double evaluate_shifted(std::span<const double> f_row, double z_target,
                               const SpaceTimeGrid& grid) {
    assert(f_row.size() == grid.row_size());
    return detail::interpolate_at(f_row, (z_target - grid.z_min()) / grid.dz());
}

/**
 * Precomputed jump operator for one (quadrature, lattice, contract) triple.
 *
 * The interpolation stencil depends on (k, l, m). The fractional coordinate
 * is affine in k, s = k·e^{−x_l} + c_{l,m}, so it is recomputed on the fly
 * rather than cached.
 */
class JumpOperator {
public:
    JumpOperator(const QuadratureGrid& quad, const SpaceTimeGrid& grid,
                 const OptionContract& contract)
        : grid_(grid) {
        const std::size_t n = quad.size();
        shrink_.resize(n);
        weight_.resize(n);
        for (std::size_t l = 0; l < n; ++l) {
            shrink_[l] = std::exp(-quad.nodes[l]);
            weight_[l] = quad.weights[l] * std::exp(quad.nodes[l]);
        }
        q_.resize(grid.row_count());
        for (int m = 0; m <= grid.time_steps(); ++m) q_[m] = trading_strategy_q(contract, grid.t(m));
    }

    const SpaceTimeGrid& grid() const noexcept { return grid_; }

    /// out[k] = (P̃f)(k, m).
    void apply(std::span<const double> f_row, int m, std::span<double> out) const {
        assert(f_row.size() == grid_.row_size() && out.size() == grid_.row_size());
        const int K = grid_.space_steps();
        const double z_min = grid_.z_min();
        const double inv_dz = 1.0 / grid_.dz();
        const double q = q_[static_cast<std::size_t>(m)];
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t l = 0; l < shrink_.size(); ++l) {
            const double a = shrink_[l];
            const double W = weight_[l];
            // s_k = (z_k a + q(1−a) − z_min)/Δz = k a + c
            const double c = (z_min * a + q * (1.0 - a) - z_min) * inv_dz;
            for (int k = 0; k <= K; ++k) {
                out[k] += W * detail::interpolate_at(f_row, k * a + c);
            }
        }
    }

    std::vector<double> apply(std::span<const double> f_row, int m) const {
        std::vector<double> out(grid_.row_size());
        apply(f_row, m, out);
        return out;
    }

private:
    SpaceTimeGrid grid_;
    std::vector<double> shrink_;  ///< e^{−x_l}
    std::vector<double> weight_;  ///< e^{x_l} × trapezoidal weight
    std::vector<double> q_;       ///< q at each time level
};

/// One-shot form of JumpOperator::apply.
inline std::vector<double> apply_P(std::span<const double> f_row, int m, const QuadratureGrid& quad,
                                   const SpaceTimeGrid& grid, const OptionContract& contract) {
    return JumpOperator(quad, grid, contract).apply(f_row, m);
}

}  // namespace asianjd
