#pragma once

/**
 * @file montecarlo.hpp
 * @brief Monte Carlo benchmark for the continuously averaged Asian option.
 *
 * Each sub-interval of length Δ = T/steps applies the exact log-normal
 * diffusion factor exp((r − μ − σ²/2)Δ + σ√Δ·N(0,1)), then a Poisson(λΔ)
 * number of jump factors e^X at the end of the interval. The time average
 * is the trapezoidal rule on the sampled path.
 *
 * Every sample owns a random stream derived from (seed, sample index), so
 * results do not depend on thread count or scheduling. With antithetic
 * sampling a sample is a pair of paths sharing jumps and negated Gaussians.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <thread>
#include <vector>

#include "contract.hpp"
#include "errors.hpp"
#include "jump_models.hpp"

namespace asianjd {

struct MCConfig {
    long paths = 100000;
    int time_steps = 500;
    std::uint64_t seed = 20240601;
    bool antithetic = false;
    int threads = 1;

    void validate() const {
        if (paths < 1) throw ConfigError("mc.paths must be at least 1");
        if (time_steps < 1) throw ConfigError("mc.time_steps must be at least 1");
        if (threads < 1) throw ConfigError("mc.threads must be at least 1");
    }
};

struct MCResult {
    double price = 0.0;
    double std_error = 0.0;
    long paths_used = 0;
    double seconds = 0.0;
    // path diagnostics
    double discounted_terminal_mean = 0.0;  ///< sample mean of e^{−rT} S_T
    double discounted_terminal_stderr = 0.0;
    double jump_count_mean = 0.0;
    double jump_count_stderr = 0.0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Pairwise summation; the result depends only on the order of `x`.
inline double pairwise_sum(std::span<const double> x) {
    if (x.size() <= 8) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    const std::size_t h = x.size() / 2;
    return pairwise_sum(x.first(h)) + pairwise_sum(x.subspan(h));
}

struct MeanAndError {
    double mean;
    double error;
};

/// Sample mean and its standard error. The spread is taken about x[0], so a
/// constant sample has an error of exactly zero.
inline MeanAndError mean_and_error(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    const double mean = pairwise_sum(x) / n;
    std::vector<double> d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - x[0];
    const double shift = pairwise_sum(d) / n;
    for (double& v : d) v = (v - shift) * (v - shift);
    const double var = x.size() > 1 ? pairwise_sum(d) / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
}

}  // namespace detail

/// Reproducible per-sample engine: identical (seed, index) give identical draws.
inline std::mt19937_64 seeded_stream(std::uint64_t seed, std::uint64_t path_index) {
    const std::uint64_t a = detail::splitmix64(seed);
    const std::uint64_t b = detail::splitmix64(a ^ detail::splitmix64(path_index));
    std::seed_seq seq{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32)};
    return std::mt19937_64(seq);
}

/**
 * Discounted path functionals. `average` and `terminal` hold legs() values
 * per sample (leg-major within a sample): e^{−rT}(1/T)∫S dt and e^{−rT}S_T.
 */
struct PathSamples {
    std::vector<double> average;
    std::vector<double> terminal;
    std::vector<double> jumps;  ///< jump count per sample
    int legs_per_sample = 1;
    double seconds = 0.0;

    std::size_t samples() const noexcept { return jumps.size(); }
};

namespace detail {

inline void simulate_sample(const OptionContract& c, const JumpModel& model,
                            const ModelConstants& consts, const MCConfig& mc, std::size_t i,
                            PathSamples& out) {
    std::mt19937_64 rng = seeded_stream(mc.seed, i);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double dt = c.T / mc.time_steps;
    std::poisson_distribution<int> poisson(consts.lambda > 0.0 ? consts.lambda * dt : 1.0);
    const double drift = (c.r - consts.mu - 0.5 * c.sigma * c.sigma) * dt;
    const double vol = c.sigma * std::sqrt(dt);

    double s = c.S0, sa = c.S0;
    double sum = 0.5 * c.S0, sum_a = 0.5 * c.S0;
    long jumps = 0;
    for (int step = 1; step <= mc.time_steps; ++step) {
        const double z = c.sigma > 0.0 ? normal(rng) : 0.0;
        double log_jump = 0.0;
        if (consts.lambda > 0.0) {
            const int n = poisson(rng);
            jumps += n;
            for (int j = 0; j < n; ++j) log_jump += sample_log_jump(model, rng);
        }
        s *= std::exp(drift + vol * z + log_jump);
        if (mc.antithetic) sa *= std::exp(drift - vol * z + log_jump);
        const double w = step == mc.time_steps ? 0.5 : 1.0;
        sum += w * s;
        sum_a += w * sa;
    }
    const double disc = std::exp(-c.r * c.T);
    const std::size_t base = i * static_cast<std::size_t>(out.legs_per_sample);
    out.average[base] = disc * sum / mc.time_steps;
    out.terminal[base] = disc * s;
    if (mc.antithetic) {
        out.average[base + 1] = disc * sum_a / mc.time_steps;
        out.terminal[base + 1] = disc * sa;
    }
    out.jumps[i] = static_cast<double>(jumps);
}

}  // namespace detail

/// Simulate all samples. With antithetic sampling `mc.paths` is rounded up
/// to an even number of paths.
inline PathSamples simulate_paths(const OptionContract& contract, const JumpModel& model,
                                  const MCConfig& mc) {
    using clock = std::chrono::steady_clock;
    contract.validate();
    mc.validate();
    const auto start = clock::now();
    const ModelConstants consts = compensator(model, contract.lambda);

    PathSamples out;
    out.legs_per_sample = mc.antithetic ? 2 : 1;
    const auto samples = static_cast<std::size_t>(mc.antithetic ? (mc.paths + 1) / 2 : mc.paths);
    out.average.resize(samples * out.legs_per_sample);
    out.terminal.resize(samples * out.legs_per_sample);
    out.jumps.resize(samples);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            detail::simulate_sample(contract, model, consts, mc, i, out);
    };
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(mc.threads), samples);
    if (n <= 1) {
        work(0, samples);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < n; ++t)
            pool.emplace_back(work, samples * t / n, samples * (t + 1) / n);
        for (auto& th : pool) th.join();
    }
    out.seconds = std::chrono::duration<double>(clock::now() - start).count();
    return out;
}

/// Price the contract from already simulated paths.
inline MCResult price_from_paths(const OptionContract& c, const PathSamples& paths) {
    const std::size_t legs = static_cast<std::size_t>(paths.legs_per_sample);
    const std::size_t n = paths.samples();
    const double disc_strike = std::exp(-c.r * c.T) * c.K2;
    std::vector<double> pay(n), term(n);
    for (std::size_t i = 0; i < n; ++i) {
        double p = 0.0, t = 0.0;
        for (std::size_t leg = 0; leg < legs; ++leg) {
            const double a = paths.average[i * legs + leg];
            const double st = paths.terminal[i * legs + leg];
            p += std::max(c.zeta * (a - c.K1 * st - disc_strike), 0.0);
            t += st;
        }
        pay[i] = p / static_cast<double>(legs);
        term[i] = t / static_cast<double>(legs);
    }
    MCResult r;
    const auto p = detail::mean_and_error(pay);
    const auto t = detail::mean_and_error(term);
    const auto j = detail::mean_and_error(paths.jumps);
    r.price = p.mean;
    r.std_error = p.error;
    r.paths_used = static_cast<long>(n * legs);
    r.seconds = paths.seconds;
    r.discounted_terminal_mean = t.mean;
    r.discounted_terminal_stderr = t.error;
    r.jump_count_mean = j.mean;
    r.jump_count_stderr = j.error;
    return r;
}

inline MCResult simulate_price(const OptionContract& contract, const JumpModel& model,
                               const MCConfig& mc) {
    return price_from_paths(contract, simulate_paths(contract, model, mc));
}

/// Call and put priced on common random numbers.
struct MCParity {
    MCResult call;
    MCResult put;
    double difference = 0.0;         ///< C − P
    double difference_stderr = 0.0;  ///< standard error of the per-sample C − P
};

inline MCParity simulate_call_put(const OptionContract& contract, const JumpModel& model,
                                  const MCConfig& mc) {
    const PathSamples paths = simulate_paths(contract, model, mc);
    MCParity out;
    const OptionContract call = contract.with_zeta(1);
    const OptionContract put = contract.with_zeta(-1);
    out.call = price_from_paths(call, paths);
    out.put = price_from_paths(put, paths);

    const std::size_t legs = static_cast<std::size_t>(paths.legs_per_sample);
    const double disc_strike = std::exp(-contract.r * contract.T) * contract.K2;
    std::vector<double> diff(paths.samples());
    for (std::size_t i = 0; i < diff.size(); ++i) {
        double d = 0.0;
        for (std::size_t leg = 0; leg < legs; ++leg)
            d += paths.average[i * legs + leg] - contract.K1 * paths.terminal[i * legs + leg] -
                 disc_strike;
        diff[i] = d / static_cast<double>(legs);
    }
    const auto e = detail::mean_and_error(diff);
    out.difference = e.mean;
    out.difference_stderr = e.error;
    return out;
}

}  // namespace asianjd
