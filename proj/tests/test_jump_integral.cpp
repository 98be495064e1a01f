#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "asianjd/jump_integral.hpp"
#include "oracles.hpp"

using namespace asianjd;

namespace {

const JumpModel kKou = JumpModel::kou(0.6, 25.0, 25.0);
const JumpModel kMerton = JumpModel::merton(-0.1, 0.3);
const OptionContract kCall{1, 0.0, 90.0, 1.0, 0.15, 0.2, 1.0, 100.0};

SpaceTimeGrid desk_grid(int K = 400, int M = 20) {
    return SpaceTimeGrid::centered(initial_state(kCall).z0, 0.5, K, M, 1.0);
}

std::vector<double> sample_row(const SpaceTimeGrid& g, double (*f)(double)) {
    std::vector<double> row(g.row_size());
    for (int k = 0; k <= g.space_steps(); ++k) row[k] = f(g.z(k));
    return row;
}

// Random non-negative row whose end cells rise outward, so the linear
// continuation beyond the lattice stays non-negative.
std::vector<double> outward_row(oracle::Random& rng, std::size_t n) {
    std::vector<double> r = rng.vector(n, 0.0, 1.0);
    r[0] = r[1] + rng.uniform(0.0, 0.5);
    r[n - 1] = r[n - 2] + rng.uniform(0.0, 0.5);
    return r;
}

}  // namespace

TEST(EvaluateShifted, Interpolation) {
    const SpaceTimeGrid g(0.0, 1.0, 4, 1, 1.0);
    const std::vector<double> f{0.0, 2.0, 4.0, 5.0, 7.0};
    EXPECT_EQ(evaluate_shifted(f, 0.5, g), 4.0);
    EXPECT_DOUBLE_EQ(evaluate_shifted(f, 0.375, g), 3.0);
    EXPECT_DOUBLE_EQ(evaluate_shifted(f, 1.25, g), 7.0 + 2.0);      // slope of last cell is 2/0.25 = 8
    EXPECT_EQ(evaluate_shifted(f, -1.0, g), 0.0);                   // continuation floored at 0
}

TEST(EvaluateShifted, CallRowContinuesWithUnitSlope) {
    const SpaceTimeGrid g = desk_grid();
    std::vector<double> row(g.row_size());
    for (int k = 0; k <= g.space_steps(); ++k) row[k] = payoff(kCall, g.z(k));
    for (double over : {0.01, 0.1, 0.5, 2.0}) {
        const double z = g.z_max() + over;
        EXPECT_NEAR(evaluate_shifted(row, z, g), row.back() + over, 1e-12);
        EXPECT_NEAR(evaluate_shifted(row, z, g), payoff(kCall, z), 1e-12);
    }
}

TEST(ApplyP, ConstantRowGivesMeanJump) {
    for (const JumpModel& m : {kKou, kMerton}) {
        const SpaceTimeGrid g = desk_grid();
        const QuadratureGrid q = build_quadrature_grid(m, default_truncation(m), 500);
        const std::vector<double> ones(g.row_size(), 1.0);
        const double xi = mean_jump_size(m);
        for (int mm : {0, 10, 20}) {
            const auto p = apply_P(ones, mm, q, g, kCall);
            for (double v : p) {
                EXPECT_NEAR(v, xi, 1e-5) << describe(m);
                EXPECT_LE(v, xi + 1e-4);
            }
        }
    }
}

TEST(ApplyP, PointMassIsIdentity) {
    QuadratureGrid q;
    q.nodes = {0.0};
    q.densities = {1.0};
    q.weights = {1.0};
    const SpaceTimeGrid g = desk_grid(100);
    oracle::Random rng(3);
    const std::vector<double> f = rng.vector(g.row_size(), 0.0, 1.0);
    for (int m : {0, 7, 20}) {
        const auto p = apply_P(f, m, q, g, kCall);
        for (std::size_t k = 0; k < f.size(); ++k) EXPECT_DOUBLE_EQ(p[k], f[k]);
    }
}

TEST(ApplyP, LinearRowShiftsByHedgeTerm) {
    // Strictly positive lattice so that the identity row z stays non-negative.
    const SpaceTimeGrid g(0.5, 1.5, 400, 10, 1.0);
    const std::vector<double> f = sample_row(g, [](double z) { return z; });
    const QuadratureGrid q = build_quadrature_grid(kKou, 10.0, 500);
    const double xi = mean_jump_size(kKou);
    for (int m : {0, 5, 10}) {
        const double qt = trading_strategy_q(kCall, g.t(m));
        const auto p = apply_P(f, m, q, g, kCall);
        for (int k = 0; k <= g.space_steps(); ++k) {
            // Exact for the discrete weights: z·Σw + q(Σw e^x − Σw).
            const double exact = g.z(k) * q.mass() + qt * (q.tilted_mass() - q.mass());
            EXPECT_NEAR(p[k], exact, 1e-12);
            EXPECT_NEAR(p[k], g.z(k) + qt * (xi - 1.0), 2e-5);
        }
    }
}

TEST(ApplyP, LinearInRow) {
    oracle::Random rng(5);
    const SpaceTimeGrid g = desk_grid(200);
    for (const JumpModel& m : {kKou, kMerton}) {
        const QuadratureGrid q = build_quadrature_grid(m, default_truncation(m), 300);
        const JumpOperator op(q, g, kCall);
        for (int trial = 0; trial < 20; ++trial) {
            const auto f = outward_row(rng, g.row_size());
            const auto h = outward_row(rng, g.row_size());
            const double a = rng.uniform(0.0, 3.0), b = rng.uniform(0.0, 3.0);
            std::vector<double> mix(f.size());
            for (std::size_t k = 0; k < f.size(); ++k) mix[k] = a * f[k] + b * h[k];
            const int mm = rng.integer(0, g.time_steps());
            const auto pf = op.apply(f, mm), ph = op.apply(h, mm), pm = op.apply(mix, mm);
            for (std::size_t k = 0; k < f.size(); ++k)
                EXPECT_NEAR(pm[k], a * pf[k] + b * ph[k], 1e-12 * (1.0 + std::abs(pm[k])));
        }
    }
}

TEST(ApplyP, Monotone) {
    oracle::Random rng(9);
    const SpaceTimeGrid g = desk_grid(200);
    for (const JumpModel& m : {kKou, kMerton}) {
        const QuadratureGrid q = build_quadrature_grid(m, default_truncation(m), 300);
        const JumpOperator op(q, g, kCall);
        for (int trial = 0; trial < 20; ++trial) {
            const auto f = outward_row(rng, g.row_size());
            const auto bump = outward_row(rng, g.row_size());
            std::vector<double> h(f.size());
            for (std::size_t k = 0; k < f.size(); ++k) h[k] = f[k] + bump[k];
            const int mm = rng.integer(0, g.time_steps());
            const auto pf = op.apply(f, mm), ph = op.apply(h, mm);
            for (std::size_t k = 0; k < f.size(); ++k) EXPECT_LE(pf[k], ph[k] + 1e-14);
        }
    }
}

TEST(ApplyP, TrapezoidalRefinement) {
    // Smooth row on a fine lattice; the oracle integrates the same interpolant
    // adaptively over the truncated support, so only the x-quadrature error remains.
    const SpaceTimeGrid g(0.0, 1.5, 6000, 4, 1.0);
    const std::vector<double> f = sample_row(g, [](double z) { return std::exp(z); });
    const int k = 3000, mm = 1;
    const double z = g.z(k), qt = trading_strategy_q(kCall, g.t(mm));
    auto integrand = [&](double x, double dens) {
        return std::exp(x) * dens * evaluate_shifted(f, z * std::exp(-x) + qt * (1.0 - std::exp(-x)), g);
    };
    const double exact =
        oracle::integrate([&](double x) { return integrand(x, density_left(kKou, x)); }, -0.4, 0.0, 1e-14, 40) +
        oracle::integrate([&](double x) { return integrand(x, density(kKou, x)); }, 0.0, 0.4, 1e-14, 40);
    double prev = 0.0;
    for (int L : {40, 80, 160, 320}) {
        const QuadratureGrid q = build_quadrature_grid(kKou, 10.0, L);
        const double err = std::abs(apply_P(f, mm, q, g, kCall)[k] - exact);
        if (prev > 0.0) {
            EXPECT_GT(prev / err, 3.0) << "L = " << L;
            EXPECT_LT(prev / err, 5.0) << "L = " << L;
        }
        prev = err;
    }
}

TEST(JumpOperator, MatchesOneShotForm) {
    oracle::Random rng(1);
    const SpaceTimeGrid g = desk_grid(100);
    const QuadratureGrid q = build_quadrature_grid(kKou, 10.0, 200);
    const JumpOperator op(q, g, kCall);
    const auto f = rng.vector(g.row_size(), 0.0, 1.0);
    for (int m = 0; m <= g.time_steps(); ++m) EXPECT_EQ(op.apply(f, m), apply_P(f, m, q, g, kCall));
}
