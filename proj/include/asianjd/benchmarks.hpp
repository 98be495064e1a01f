#pragma once

/**
 * @file benchmarks.hpp
 * @brief Published reference cases for the iteration scheme: double
 *        exponential and normal jump cases with r = 0.15, S₀ = 100, T = 1,
 *        K₁ = 0, plus the convergence sweeps around the σ = 0.2, K₂ = 90,
 *        λ = 1 double exponential call.
 */

#include <array>
#include <string>
#include <vector>

#include "config.hpp"

namespace asianjd::benchmarks {

struct ReferenceRow {
    double sigma;
    double K2;
    double lambda;
    double call;
    double put;
    double mc_call;
    double mc_stderr;
};

/// Double exponential jumps, p = 0.6, η₁ = η₂ = 25.
inline constexpr std::array<ReferenceRow, 12> kDoubleExponential{{
    {0.1, 90, 1, 15.419, 0.012, 15.410, 0.006},
    {0.1, 90, 3, 15.457, 0.045, 15.442, 0.007},
    {0.1, 100, 1, 7.170, 0.376, 7.170, 0.006},
    {0.1, 100, 3, 7.456, 0.656, 7.439, 0.007},
    {0.1, 110, 1, 1.702, 3.520, 1.697, 0.004},
    {0.1, 110, 3, 2.220, 4.040, 2.207, 0.004},
    {0.2, 90, 1, 15.699, 0.292, 15.686, 0.012},
    {0.2, 90, 3, 15.802, 0.390, 15.806, 0.012},
    {0.2, 100, 1, 8.540, 1.745, 8.540, 0.010},
    {0.2, 100, 3, 8.790, 1.994, 8.784, 0.010},
    {0.2, 110, 1, 3.723, 5.541, 3.721, 0.007},
    {0.2, 110, 3, 4.045, 5.864, 4.038, 0.007},
}};

/// Normal log-jumps with mean −0.1, stdev 0.3, λ = 1.
inline constexpr std::array<ReferenceRow, 6> kLogNormal{{
    {0.1, 90, 1, 16.997, 1.601, 16.991, 0.014},
    {0.1, 100, 1, 10.062, 3.272, 10.046, 0.013},
    {0.1, 110, 1, 4.836, 6.653, 4.834, 0.011},
    {0.2, 90, 1, 17.346, 1.950, 17.339, 0.017},
    {0.2, 100, 1, 10.959, 4.170, 10.968, 0.015},
    {0.2, 110, 1, 6.303, 8.120, 6.310, 0.012},
}};

struct TruncationRef { double N; double call; double put; double residual; };
inline constexpr std::array<TruncationRef, 5> kTruncationStudy{{
    {5, 15.5832, 0.2858, -0.1002},
    {8, 15.6953, 0.2916, 0.0061},
    {10, 15.6994, 0.2921, 0.0097},
    {12, 15.6995, 0.2921, 0.0098},
    {15, 15.6995, 0.2921, 0.0098},
}};

struct QuadratureRef { int L; double call; double put; double residual; };
inline constexpr std::array<QuadratureRef, 7> kQuadratureStudy{{
    {200, 15.7295, 0.2926, 0.0393},
    {300, 15.7103, 0.2923, 0.0204},
    {400, 15.7034, 0.2924, 0.0134},
    {500, 15.6944, 0.2921, 0.0097},
    {600, 15.6968, 0.2920, 0.0072},
    {700, 15.6954, 0.2920, 0.0058},
    {800, 15.6943, 0.2920, 0.0047},
}};

struct GridRef { int M; int K; double call; };
inline constexpr std::array<GridRef, 4> kGridStudy{{
    {10, 40, 15.7093},
    {25, 100, 15.6929},
    {50, 200, 15.688},
    {100, 400, 15.6864},
}};

/// Desk-scale configuration shared by all reference cases.
inline RunConfig desk_config() {
    RunConfig c;
    c.contract = OptionContract{1, 0.0, 90.0, 1.0, 0.15, 0.2, 1.0, 100.0};
    c.grid.M = 100;
    c.grid.K = 400;
    c.grid.half_width = 0.5;
    c.quadrature.L = 500;
    c.mc.paths = 100000;
    c.mc.time_steps = 500;
    return c;
}

inline RunConfig double_exponential_case(const ReferenceRow& row) {
    RunConfig c = desk_config();
    c.model.kind = ModelKind::DoubleExponential;
    c.model.p = 0.6;
    c.model.eta1 = 25.0;
    c.model.eta2 = 25.0;
    c.quadrature.N = 10.0;
    c.contract.sigma = row.sigma;
    c.contract.K2 = row.K2;
    c.contract.lambda = row.lambda;
    c.id = "kou_s" + detail::format_double(row.sigma) + "_K" + detail::format_double(row.K2) +
           "_l" + detail::format_double(row.lambda);
    return c;
}

inline RunConfig lognormal_case(const ReferenceRow& row) {
    RunConfig c = desk_config();
    c.model.kind = ModelKind::LogNormal;
    c.model.mean = -0.1;
    c.model.stdev = 0.3;
    c.quadrature.N = 6.0;
    c.contract.sigma = row.sigma;
    c.contract.K2 = row.K2;
    c.contract.lambda = row.lambda;
    c.id = "merton_s" + detail::format_double(row.sigma) + "_K" + detail::format_double(row.K2);
    return c;
}

/// σ = 0.2, K₂ = 90, λ = 1 double exponential case used by the sweeps.
inline RunConfig study_base() { return double_exponential_case(kDoubleExponential[6]); }

}  // namespace asianjd::benchmarks
