#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "asianjd/jump_models.hpp"
#include "oracles.hpp"

using namespace asianjd;

namespace {

const JumpModel kKou = JumpModel::kou(0.6, 25.0, 25.0);
const JumpModel kMerton = JumpModel::merton(-0.1, 0.3);

// ∫ e^x g(x) dx by adaptive quadrature, split at the cusp.
double xi_oracle(const JumpModel& m, double lo, double hi) {
    auto f = [&](double x) { return std::exp(x) * density(m, x); };
    auto fl = [&](double x) { return std::exp(x) * density_left(m, x); };
    return oracle::integrate(fl, lo, 0.0) + oracle::integrate(f, 0.0, hi);
}

}  // namespace

TEST(Density, DoubleExponentialAtZero) {
    EXPECT_DOUBLE_EQ(density(kKou, 0.0), 15.0);
    EXPECT_DOUBLE_EQ(density_left(kKou, 0.0), 10.0);
    EXPECT_NEAR(density(kKou, -50.0), 0.0, 1e-300);
    EXPECT_NEAR(density(kKou, 0.04), 15.0 * std::exp(-1.0), 1e-12);
}

TEST(Density, LogNormalPeak) {
    EXPECT_NEAR(density(kMerton, -0.1), 1.329808, 1e-6);
    EXPECT_DOUBLE_EQ(density(kMerton, -0.1 + 0.2), density(kMerton, -0.1 - 0.2));
}

TEST(Density, IntegratesToOne) {
    auto g = [](const JumpModel& m) { return [&m](double x) { return density(m, x); }; };
    EXPECT_NEAR(oracle::integrate(g(kKou), -2.0, 0.0) + oracle::integrate(g(kKou), 0.0, 2.0), 1.0, 1e-10);
    EXPECT_NEAR(oracle::integrate(g(kMerton), -4.0, 4.0), 1.0, 1e-10);
}

TEST(MeanJumpSize, MatchesQuadratureOracle) {
    EXPECT_NEAR(mean_jump_size(kKou), xi_oracle(kKou, -2.0, 2.0), 1e-10);
    EXPECT_NEAR(mean_jump_size(kMerton), xi_oracle(kMerton, -4.0, 4.0), 1e-10);
    EXPECT_NEAR(mean_jump_size(kKou), 1.0096154, 1e-7);
    EXPECT_NEAR(mean_jump_size(kMerton), std::exp(-0.055), 1e-12);
    EXPECT_NEAR(mean_jump_size(kMerton), 0.9464851, 1e-7);
}

TEST(MeanJumpSize, DegeneratePointMass) {
    EXPECT_NEAR(mean_jump_size(JumpModel::merton(0.0, 1e-9)), 1.0, 1e-12);
}

TEST(Compensator, Examples) {
    EXPECT_EQ(compensator(kKou, 0.0).mu, 0.0);
    EXPECT_EQ(compensator(kMerton, 0.0).mu, 0.0);
    EXPECT_NEAR(compensator(kKou, 1.0).mu, 0.0096154, 1e-7);
    EXPECT_NEAR(compensator(kKou, 3.0).mu, 0.0288462, 1e-7);
    EXPECT_THROW(compensator(kKou, -1.0), ConfigError);
}

TEST(Compensator, LinearInIntensity) {
    for (double lambda : {0.1, 0.7, 1.0, 2.5}) {
        EXPECT_EQ(compensator(kKou, 2.0 * lambda).mu, 2.0 * compensator(kKou, lambda).mu);
        EXPECT_EQ(compensator(kMerton, 2.0 * lambda).mu, 2.0 * compensator(kMerton, lambda).mu);
        const ModelConstants c = compensator(kKou, lambda);
        EXPECT_EQ(c.mu, lambda * (c.xi - 1.0));
        EXPECT_GT(c.xi, 0.0);
    }
}

TEST(JumpModel, RejectsInvalidParameters) {
    EXPECT_THROW(JumpModel::kou(0.0, 25, 25), ConfigError);
    EXPECT_THROW(JumpModel::kou(1.0, 25, 25), ConfigError);
    EXPECT_THROW(JumpModel::kou(0.5, 1.0, 25), ConfigError);
    EXPECT_THROW(JumpModel::kou(0.5, 25, 0.0), ConfigError);
    EXPECT_THROW(JumpModel::merton(0.0, 0.0), ConfigError);
    EXPECT_THROW(JumpModel::merton(NAN, 0.3), ConfigError);
}

TEST(QuadratureGrid, DoubleExponentialLayout) {
    const QuadratureGrid q = build_quadrature_grid(kKou, 10.0, 500);
    ASSERT_EQ(q.size(), 501u);
    EXPECT_DOUBLE_EQ(q.nodes.front(), -0.4);
    EXPECT_DOUBLE_EQ(q.nodes.back(), 0.4);
    EXPECT_EQ(q.nodes[250], 0.0);
    for (std::size_t l = 0; l < q.size(); ++l) {
        EXPECT_EQ(q.nodes[l], -q.nodes[q.size() - 1 - l]);
        EXPECT_GE(q.densities[l], 0.0);
        if (l > 0) {
            EXPECT_LT(q.nodes[l - 1], q.nodes[l]);
        }
    }
    // Node spacing grows away from the cusp.
    for (std::size_t l = 251; l + 1 < q.size(); ++l)
        EXPECT_GE(q.nodes[l + 1] - q.nodes[l], q.nodes[l] - q.nodes[l - 1]);
    for (std::size_t l = 1; l < 250; ++l)
        EXPECT_GE(q.nodes[l] - q.nodes[l - 1], q.nodes[l + 1] - q.nodes[l]);
}

TEST(QuadratureGrid, LogNormalLayout) {
    const QuadratureGrid q = build_quadrature_grid(kMerton, 6.0, 600);
    ASSERT_EQ(q.size(), 601u);
    EXPECT_NEAR(q.nodes.front(), -1.9, 1e-12);
    EXPECT_NEAR(q.nodes.back(), 1.7, 1e-12);
    for (std::size_t l = 1; l < q.size(); ++l) EXPECT_NEAR(q.nodes[l] - q.nodes[l - 1], 0.006, 1e-12);
}

TEST(QuadratureGrid, MinimalGrid) {
    for (const JumpModel& m : {kKou, kMerton}) {
        const QuadratureGrid q = build_quadrature_grid(m, 5.0, 2);
        ASSERT_EQ(q.size(), 3u);
        EXPECT_LT(q.nodes[0], q.nodes[1]);
        EXPECT_LT(q.nodes[1], q.nodes[2]);
    }
    EXPECT_THROW(build_quadrature_grid(kKou, 10.0, 1), ConfigError);
    EXPECT_THROW(build_quadrature_grid(kKou, 0.0, 100), ConfigError);
}

TEST(QuadratureGrid, TruncatedMass) {
    // Kou tail mass beyond N = 15 scale lengths is e^{-15} < 1e-6.
    const QuadratureGrid q = build_quadrature_grid(kKou, 15.0, 2000);
    const double tail = std::exp(-15.0);
    EXPECT_LT(tail, 1e-6);
    EXPECT_LE(q.mass(), 1.0 + 1e-5);
    EXPECT_GE(q.mass(), 1.0 - tail - 1e-5);
    const QuadratureGrid g = build_quadrature_grid(kMerton, 6.0, 600);
    EXPECT_LE(g.mass(), 1.0 + 1e-8);
    EXPECT_GE(g.mass(), 1.0 - 1e-8);
}

TEST(QuadratureGrid, TiltedMassMatchesClosedForm) {
    const QuadratureGrid q = build_quadrature_grid(kKou, 15.0, 2000);
    EXPECT_LT(std::abs(q.tilted_mass() / mean_jump_size(kKou) - 1.0), 1e-5);
    const QuadratureGrid g = build_quadrature_grid(kMerton, 6.0, 600);
    EXPECT_LT(std::abs(g.tilted_mass() / mean_jump_size(kMerton) - 1.0), 1e-5);
}

TEST(Sampling, MeanOfJumpFactor) {
    for (const JumpModel& m : {kKou, kMerton}) {
        std::mt19937_64 rng(7);
        const int n = 200000;
        double s = 0.0, s2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double y = std::exp(sample_log_jump(m, rng));
            s += y;
            s2 += y * y;
        }
        const double mean = s / n;
        const double se = std::sqrt((s2 / n - mean * mean) / n);
        EXPECT_NEAR(mean, mean_jump_size(m), 4.0 * se) << describe(m);
    }
}
