#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "asianjd/montecarlo.hpp"

using namespace asianjd;

namespace {

const JumpModel kKou = JumpModel::kou(0.6, 25.0, 25.0);
const JumpModel kMerton = JumpModel::merton(-0.1, 0.3);
const OptionContract kCall{1, 0.0, 90.0, 1.0, 0.15, 0.2, 1.0, 100.0};

MCConfig small(long paths = 20000, int steps = 100) {
    MCConfig mc;
    mc.paths = paths;
    mc.time_steps = steps;
    return mc;
}

void expect_identical(const MCResult& a, const MCResult& b) {
    EXPECT_EQ(a.price, b.price);
    EXPECT_EQ(a.std_error, b.std_error);
    EXPECT_EQ(a.paths_used, b.paths_used);
    EXPECT_EQ(a.discounted_terminal_mean, b.discounted_terminal_mean);
    EXPECT_EQ(a.jump_count_mean, b.jump_count_mean);
}

}  // namespace

TEST(SeededStream, Deterministic) {
    auto a = seeded_stream(42, 17), b = seeded_stream(42, 17);
    for (int i = 0; i < 100; ++i) ASSERT_EQ(a(), b());
}

TEST(SeededStream, IndependentAcrossIndexAndSeed) {
    auto corr = [](std::mt19937_64 x, std::mt19937_64 y) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const int n = 20000;
        double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
        for (int i = 0; i < n; ++i) {
            const double a = u(x), b = u(y);
            sx += a, sy += b, sxy += a * b, sxx += a * a, syy += b * b;
        }
        const double cov = sxy / n - sx / n * sy / n;
        return cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
    };
    auto s0 = seeded_stream(42, 0), s1 = seeded_stream(42, 1);
    EXPECT_NE(s0(), s1());
    EXPECT_LT(std::abs(corr(seeded_stream(42, 0), seeded_stream(42, 1))), 4.0 / std::sqrt(20000.0));
    auto t0 = seeded_stream(0, 0), t1 = seeded_stream(1, 0);
    EXPECT_NE(t0(), t1());
    EXPECT_LT(std::abs(corr(seeded_stream(0, 0), seeded_stream(1, 0))), 4.0 / std::sqrt(20000.0));
}

TEST(PairwiseSum, MatchesExactSums) {
    std::vector<double> x(1000);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i);
    EXPECT_EQ(detail::pairwise_sum(x), 999.0 * 1000.0 / 2.0);
    const auto e = detail::mean_and_error(std::vector<double>(10, 2.5));
    EXPECT_EQ(e.mean, 2.5);
    EXPECT_EQ(e.error, 0.0);
}

TEST(SimulatePrice, DeterministicPathMatchesClosedForm) {
    OptionContract c = kCall;
    c.sigma = 0.0;
    c.lambda = 0.0;
    const MCResult r = simulate_price(c, kKou, small(50, 500));
    // e^{−rT}(S₀(e^{rT} − 1)/(rT) − K₂)
    const double exact = std::exp(-0.15) * (100.0 * std::expm1(0.15) / 0.15 - 90.0);
    EXPECT_NEAR(r.price, exact, 1e-6);
    EXPECT_EQ(r.std_error, 0.0);
    EXPECT_NEAR(exact, 15.3976, 1e-4);
}

TEST(SimulatePrice, DiscountedPriceIsMartingale) {
    for (const JumpModel& m : {kKou, kMerton}) {
        for (double lambda : {1.0, 3.0}) {
            OptionContract c = kCall;
            c.lambda = lambda;
            const MCResult r = simulate_price(c, m, small());
            EXPECT_NEAR(r.discounted_terminal_mean, c.S0, 4.0 * r.discounted_terminal_stderr)
                << describe(m) << " lambda " << lambda;
            EXPECT_NEAR(r.jump_count_mean, lambda * c.T, 4.0 * r.jump_count_stderr);
            EXPECT_GT(r.std_error, 0.0);
        }
    }
}

TEST(SimulatePrice, IndependentOfThreadCount) {
    MCConfig one = small(5001, 50), three = small(5001, 50);
    three.threads = 3;
    expect_identical(simulate_price(kCall, kKou, one), simulate_price(kCall, kKou, three));
    one.antithetic = three.antithetic = true;
    expect_identical(simulate_price(kCall, kKou, one), simulate_price(kCall, kKou, three));
    expect_identical(simulate_price(kCall, kMerton, one), simulate_price(kCall, kMerton, one));
}

TEST(SimulatePrice, SeedChangesResult) {
    MCConfig a = small(2000, 50), b = a;
    b.seed = a.seed + 1;
    EXPECT_NE(simulate_price(kCall, kKou, a).price, simulate_price(kCall, kKou, b).price);
}

TEST(SimulatePrice, AntitheticReducesVariance) {
    for (double K2 : {90.0, 100.0, 110.0}) {
        OptionContract c = kCall;
        c.K2 = K2;
        MCConfig plain = small(20000, 100), anti = plain;
        anti.antithetic = true;
        const MCResult p = simulate_price(c, kKou, plain);
        const MCResult a = simulate_price(c, kKou, anti);
        EXPECT_EQ(a.paths_used, p.paths_used);
        EXPECT_LE(a.std_error, p.std_error) << "K2 = " << K2;
        EXPECT_NEAR(a.price, p.price, 4.0 * std::hypot(a.std_error, p.std_error));
    }
}

TEST(SimulateCallPut, ParityOnCommonRandomNumbers) {
    for (const JumpModel& m : {kKou, kMerton}) {
        for (double K2 : {90.0, 110.0}) {
            OptionContract c = kCall;
            c.K2 = K2;
            const MCParity r = simulate_call_put(c, m, small());
            EXPECT_NEAR(r.call.price - r.put.price, r.difference, 1e-9);
            EXPECT_NEAR(r.difference, parity_gap(c), 3.0 * r.difference_stderr) << describe(m);
        }
    }
}

TEST(MCConfig, Validation) {
    MCConfig bad;
    bad.paths = 0;
    EXPECT_THROW(simulate_price(kCall, kKou, bad), ConfigError);
    bad = MCConfig{};
    bad.time_steps = 0;
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = MCConfig{};
    bad.threads = 0;
    EXPECT_THROW(bad.validate(), ConfigError);
}
