#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "errors.hpp"

namespace asianjd {

/// Uniform (z, t) lattice: z_k = z_min + kΔz, t_m = mΔt.
class SpaceTimeGrid {
public:
    SpaceTimeGrid(double z_min, double z_max, int space_steps, int time_steps, double maturity)
        : z_min_(z_min), z_max_(z_max), K_(space_steps), M_(time_steps), T_(maturity) {
        if (space_steps < 2) throw ConfigError("grid: need at least K = 2 space steps");
        if (time_steps < 1) throw ConfigError("grid: need at least M = 1 time step");
        if (!(z_min < z_max)) throw ConfigError("grid: z_min must be below z_max");
        if (!(maturity > 0.0)) throw ConfigError("grid: maturity must be positive");
        dz_ = (z_max - z_min) / K_;
        dt_ = T_ / M_;
    }

    /// Lattice centred on `center` with the given half-width.
    static SpaceTimeGrid centered(double center, double half_width, int space_steps, int time_steps,
                                  double maturity) {
        if (!(half_width > 0.0)) throw ConfigError("grid: half-width must be positive");
        return SpaceTimeGrid(center - half_width, center + half_width, space_steps, time_steps,
                             maturity);
    }

    double z_min() const noexcept { return z_min_; }
    double z_max() const noexcept { return z_max_; }
    int space_steps() const noexcept { return K_; }
    int time_steps() const noexcept { return M_; }
    double maturity() const noexcept { return T_; }
    double dz() const noexcept { return dz_; }
    double dt() const noexcept { return dt_; }

    std::size_t row_size() const noexcept { return static_cast<std::size_t>(K_) + 1; }
    std::size_t row_count() const noexcept { return static_cast<std::size_t>(M_) + 1; }

    double z(int k) const noexcept { return z_min_ + k * dz_; }
    double t(int m) const noexcept { return m == M_ ? T_ : m * dt_; }

private:
    double z_min_, z_max_;
    int K_, M_;
    double T_;
    double dz_ = 0.0, dt_ = 0.0;
};

/// Values ṽ(k, m) on a SpaceTimeGrid, stored row-per-time-level.
class ValueSurface {
public:
    explicit ValueSurface(const SpaceTimeGrid& grid)
        : grid_(grid), values_(grid.row_size() * grid.row_count(), 0.0) {}

    const SpaceTimeGrid& grid() const noexcept { return grid_; }

    std::span<double> row(int m) {
        return {values_.data() + static_cast<std::size_t>(m) * grid_.row_size(), grid_.row_size()};
    }
    std::span<const double> row(int m) const {
        return {values_.data() + static_cast<std::size_t>(m) * grid_.row_size(), grid_.row_size()};
    }

    double& operator()(int k, int m) { return row(m)[static_cast<std::size_t>(k)]; }
    double operator()(int k, int m) const { return row(m)[static_cast<std::size_t>(k)]; }

    std::span<const double> data() const noexcept { return values_; }

private:
    SpaceTimeGrid grid_;
    std::vector<double> values_;
};

}  // namespace asianjd
