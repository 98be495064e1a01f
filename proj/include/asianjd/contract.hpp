#pragma once

/**
 * @file contract.hpp
 * @brief Continuously averaged Asian contract and its one-dimensional
 *        reduction.
 *
 * Payoff at T: (ζ·((1/T)∫₀ᵀ S_t dt − K₁ S_T − K₂))⁺ with ζ = +1 (call) or
 * ζ = −1 (put). Under the stock numeraire the price is S₀·v(z₀, 0), where
 * v solves a backward equation in the state z = X/S of the replicating
 * portfolio holding q_t = (1 − e^{−r(T−t)})/(rT) shares.
 */

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "grid.hpp"

namespace asianjd {

struct OptionContract {
    int zeta = 1;      ///< +1 call, −1 put
    double K1 = 0.0;   ///< floating-strike weight on S_T
    double K2 = 0.0;   ///< fixed strike
    double T = 1.0;
    double r = 0.0;
    double sigma = 0.0;
    double lambda = 0.0;
    double S0 = 1.0;

    void validate() const {
        if (zeta != 1 && zeta != -1) throw ConfigError("contract.zeta must be +1 or -1");
        if (!(T > 0.0)) throw ConfigError("contract.T must be positive");
        if (!(r > 0.0)) throw ConfigError("contract.r must be positive");
        if (!(sigma >= 0.0)) throw ConfigError("contract.sigma must be non-negative");
        if (!(lambda >= 0.0)) throw ConfigError("contract.lambda must be non-negative");
        if (!(S0 > 0.0)) throw ConfigError("contract.S0 must be positive");
        if (!(K1 >= 0.0)) throw ConfigError("contract.K1 must be non-negative");
        if (!(K2 >= 0.0)) throw ConfigError("contract.K2 must be non-negative");
    }

    OptionContract with_zeta(int z) const {
        OptionContract c = *this;
        c.zeta = z;
        return c;
    }
};

struct ReducedState {
    double z0;  ///< initial state X₀/S₀
    double q0;  ///< initial share holding
};

/// q_t = (1 − e^{−r(T−t)})/(rT).
inline double trading_strategy_q(const OptionContract& c, double t) {
    if (t < 0.0 || t > c.T) throw ConfigError("trading_strategy_q: t outside [0, T]");
    return -std::expm1(-c.r * (c.T - t)) / (c.r * c.T);
}

inline ReducedState initial_state(const OptionContract& c) {
    const double q0 = trading_strategy_q(c, 0.0);
    return ReducedState{q0 - std::exp(-c.r * c.T) * c.K2 / c.S0, q0};
}

inline double payoff(const OptionContract& c, double z) {
    return std::max(c.zeta * (z - c.K1), 0.0);
}

/// Model-free C − P = S₀ q₀ − K₁ S₀ − e^{−rT} K₂.
inline double parity_gap(const OptionContract& c) {
    return c.S0 * trading_strategy_q(c, 0.0) - c.K1 * c.S0 - std::exp(-c.r * c.T) * c.K2;
}

/// S₀·ṽ(z₀, 0), linearly interpolated between lattice nodes.
inline double price_from_surface(const OptionContract& c, const ValueSurface& v) {
    const SpaceTimeGrid& g = v.grid();
    const double z0 = initial_state(c).z0;
    if (z0 < g.z_min() || z0 > g.z_max())
        throw ConfigError("price_from_surface: z0 = " + std::to_string(z0) +
                          " outside the lattice [" + std::to_string(g.z_min()) + ", " +
                          std::to_string(g.z_max()) + "]");
    const double s = (z0 - g.z_min()) / g.dz();
    int k = static_cast<int>(std::floor(s));
    k = std::clamp(k, 0, g.space_steps() - 1);
    const double w = s - k;
    return c.S0 * ((1.0 - w) * v(k, 0) + w * v(k + 1, 0));
}

}  // namespace asianjd
