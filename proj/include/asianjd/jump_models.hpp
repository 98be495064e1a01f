#pragma once

/**
 * @file jump_models.hpp
 * @brief Jump-size laws for the log-jump X = log Y and the quadrature
 *        grid used for the jump integral.
 *
 * Two families are supported:
 *   - double exponential:  g(x) = p η₁ e^{−η₁x} 1{x≥0} + (1−p) η₂ e^{η₂x} 1{x<0}
 *   - normal (log-normal Y): g(x) = exp(−(x−m)²/(2s²)) / (s√(2π))
 *
 * The normal density is the textbook one with variance s². Some printings of
 * this model drop the factor 2 in the exponent; that form does not integrate
 * to one and is not used here.
 */

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace asianjd {

struct DoubleExponential {
    double p;     ///< probability of an upward jump, in (0, 1)
    double eta1;  ///< rate of upward log-jumps, > 1
    double eta2;  ///< rate of downward log-jumps, > 0
};

struct LogNormal {
    double mean;   ///< location of log-jump
    double stdev;  ///< scale of log-jump, > 0
};

/// Immutable jump-size law. Construction validates the parameters.
class JumpModel {
public:
    using Law = std::variant<DoubleExponential, LogNormal>;

    JumpModel(DoubleExponential de) : law_(de) {  // NOLINT(google-explicit-constructor)
        if (!(de.p > 0.0 && de.p < 1.0))
            throw ConfigError("double exponential: p must lie in (0,1)");
        if (!(de.eta1 > 1.0))
            throw ConfigError("double exponential: eta1 must exceed 1 for a finite mean jump");
        if (!(de.eta2 > 0.0))
            throw ConfigError("double exponential: eta2 must be positive");
    }

    JumpModel(LogNormal ln) : law_(ln) {  // NOLINT(google-explicit-constructor)
        if (!std::isfinite(ln.mean))
            throw ConfigError("lognormal: mean must be finite");
        if (!(ln.stdev > 0.0))
            throw ConfigError("lognormal: stdev must be positive");
    }

    static JumpModel kou(double p, double eta1, double eta2) {
        return JumpModel(DoubleExponential{p, eta1, eta2});
    }
    static JumpModel merton(double mean, double stdev) {
        return JumpModel(LogNormal{mean, stdev});
    }

    const Law& law() const noexcept { return law_; }
    bool is_double_exponential() const noexcept {
        return std::holds_alternative<DoubleExponential>(law_);
    }

    template <class Visitor>
    decltype(auto) visit(Visitor&& v) const {
        return std::visit(std::forward<Visitor>(v), law_);
    }

private:
    Law law_;
};

/// Density of X = log Y. Right-continuous at the double-exponential cusp.
inline double density(const JumpModel& model, double x) {
    return model.visit([x](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, DoubleExponential>) {
            if (x >= 0.0) return law.p * law.eta1 * std::exp(-law.eta1 * x);
            return (1.0 - law.p) * law.eta2 * std::exp(law.eta2 * x);
        } else {
            const double u = (x - law.mean) / law.stdev;
            return std::exp(-0.5 * u * u) / (law.stdev * std::sqrt(2.0 * std::numbers::pi));
        }
    });
}

/// Left limit of the density; differs from density() only at x = 0 for the
/// double exponential law.
inline double density_left(const JumpModel& model, double x) {
    if (x == 0.0) {
        if (const auto* de = std::get_if<DoubleExponential>(&model.law()))
            return (1.0 - de->p) * de->eta2;
    }
    return density(model, x);
}

/// ξ = E[e^X], in closed form.
inline double mean_jump_size(const JumpModel& model) {
    return model.visit([](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, DoubleExponential>) {
            return law.p * law.eta1 / (law.eta1 - 1.0) +
                   (1.0 - law.p) * law.eta2 / (law.eta2 + 1.0);
        } else {
            return std::exp(law.mean + 0.5 * law.stdev * law.stdev);
        }
    });
}

struct ModelConstants {
    double xi;      ///< mean jump size E[Y]
    double mu;      ///< drift compensator λ(ξ−1)
    double lambda;  ///< jump intensity
};

inline ModelConstants compensator(const JumpModel& model, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw ConfigError("jump intensity lambda must be non-negative");
    const double xi = mean_jump_size(model);
    return ModelConstants{xi, lambda * (xi - 1.0), lambda};
}

/// Default truncation, in units of the law's natural scale (1/η or s).
inline double default_truncation(const JumpModel& model) {
    return model.is_double_exponential() ? 10.0 : 6.0;
}

/**
 * Log-jump quadrature nodes with trapezoidal weights.
 *
 * `weights[l]` is the trapezoidal weight of node l for ∫ φ(x) g(x) dx, i.e.
 * ½(x_l − x_{l−1}) g(x_l⁻) + ½(x_{l+1} − x_l) g(x_l⁺). One-sided limits only
 * matter at the double-exponential cusp, where x = 0 is always a node.
 */
struct QuadratureGrid {
    std::vector<double> nodes;
    std::vector<double> densities;  ///< g(x_l), right-continuous
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }

    /// Trapezoidal ∫ g over the truncated support.
    double mass() const {
        double s = 0.0;
        for (double w : weights) s += w;
        return s;
    }

    /// Trapezoidal ∫ e^x g(x) dx, the quadrature image of ξ.
    double tilted_mass() const {
        double s = 0.0;
        for (std::size_t l = 0; l < nodes.size(); ++l) s += weights[l] * std::exp(nodes[l]);
        return s;
    }
};

namespace detail {

inline QuadratureGrid finish_grid(const JumpModel& model, std::vector<double> nodes) {
    QuadratureGrid q;
    q.nodes = std::move(nodes);
    const std::size_t n = q.nodes.size();
    q.densities.resize(n);
    q.weights.assign(n, 0.0);
    for (std::size_t l = 0; l < n; ++l) q.densities[l] = density(model, q.nodes[l]);
    for (std::size_t l = 0; l + 1 < n; ++l) {
        const double h = q.nodes[l + 1] - q.nodes[l];
        q.weights[l] += 0.5 * h * q.densities[l];
        q.weights[l + 1] += 0.5 * h * density_left(model, q.nodes[l + 1]);
    }
    return q;
}

}  // namespace detail

/**
 * Build the quadrature grid x_0 < ... < x_L.
 *
 * Double exponential: support [−N/η₂, N/η₁]; half the intervals on each side
 * of zero, placed by x = endpoint·(j/n)² so that nodes cluster at the cusp.
 * Normal: support [m − N s, m + N s], uniform.
 *
 * @param truncation  N > 0
 * @param intervals   L ≥ 2 (the grid has L + 1 nodes)
 */
inline QuadratureGrid build_quadrature_grid(const JumpModel& model, double truncation,
                                            int intervals) {
    if (!(truncation > 0.0)) throw ConfigError("quadrature truncation N must be positive");
    if (intervals < 2) throw ConfigError("quadrature needs at least L = 2 intervals");

    std::vector<double> nodes;
    nodes.reserve(static_cast<std::size_t>(intervals) + 1);

    if (const auto* de = std::get_if<DoubleExponential>(&model.law())) {
        const int left = intervals / 2;
        const int right = intervals - left;
        const double x_min = -truncation / de->eta2;
        const double x_max = truncation / de->eta1;
        for (int j = left; j >= 1; --j) {
            const double s = static_cast<double>(j) / left;
            nodes.push_back(x_min * s * s);
        }
        nodes.push_back(0.0);
        for (int j = 1; j <= right; ++j) {
            const double s = static_cast<double>(j) / right;
            nodes.push_back(x_max * s * s);
        }
    } else {
        const auto& ln = std::get<LogNormal>(model.law());
        const double lo = ln.mean - truncation * ln.stdev;
        const double hi = ln.mean + truncation * ln.stdev;
        const double h = (hi - lo) / intervals;
        for (int l = 0; l < intervals; ++l) nodes.push_back(lo + l * h);
        nodes.push_back(hi);
    }
    return detail::finish_grid(model, std::move(nodes));
}

/// Draw one log-jump X from the model.
template <class Rng>
double sample_log_jump(const JumpModel& model, Rng& rng) {
    return model.visit([&rng](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, DoubleExponential>) {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            const bool up = u(rng) < law.p;
            std::exponential_distribution<double> e(up ? law.eta1 : law.eta2);
            const double size = e(rng);
            return up ? size : -size;
        } else {
            std::normal_distribution<double> n(law.mean, law.stdev);
            return n(rng);
        }
    });
}

inline std::string describe(const JumpModel& model) {
    return model.visit([](const auto& law) -> std::string {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, DoubleExponential>) {
            return "double_exponential(p=" + std::to_string(law.p) +
                   ", eta1=" + std::to_string(law.eta1) + ", eta2=" + std::to_string(law.eta2) + ")";
        } else {
            return "lognormal(mean=" + std::to_string(law.mean) +
                   ", stdev=" + std::to_string(law.stdev) + ")";
        }
    });
}

}  // namespace asianjd
