// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qwalk/transport.hpp"

#include <cmath>

#include "gtest/gtest.h"

using namespace qwalk;

namespace {

const InitialCoin kInit51{51.0, 0.0};

MomentSeries synthetic(double c, double alpha, int t_max) {
  MomentSeries s;
  for (int t = 1; t <= t_max; ++t) s.push_back({t, c * std::pow(t, alpha)});
  return s;
}

}  // namespace

TEST(transport, localized_distribution) {
  const auto d = position_distribution(WalkState::localized(Spinor(1.0, 0.0)));
  ASSERT_EQ(d.probabilities.size(), 1u);
  EXPECT_DOUBLE_EQ(d.probabilities.at(0), 1.0);
  EXPECT_EQ(second_moment(d), 0.0);
}

TEST(transport, one_step_distribution) {
  const auto d = position_distribution(step(WalkState::localized(Spinor(1.0, 0.0)), hadamard_coin()));
  EXPECT_NEAR(d.probabilities.at(-1), 0.5, 1e-15);
  EXPECT_NEAR(d.probabilities.at(1), 0.5, 1e-15);
  EXPECT_NEAR(d.probabilities.at(0), 0.0, 1e-15);
  EXPECT_NEAR(second_moment(d), 1.0, 1e-15);
}

TEST(transport, two_step_hadamard_distribution) {
  const auto s = final_state({0.0, 0.0}, Ordered{hadamard_coin()}, 2);
  const auto d = position_distribution(s);
  EXPECT_NEAR(d.probabilities.at(-2), 0.25, 1e-15);
  EXPECT_NEAR(d.probabilities.at(0), 0.5, 1e-15);
  EXPECT_NEAR(d.probabilities.at(2), 0.25, 1e-15);
  d.validate();
}

TEST(transport, distribution_validation) {
  PositionDistribution d;
  d.probabilities = {{0, 0.7}, {1, 0.2}};
  EXPECT_THROW(d.validate(), std::invalid_argument);
  d.probabilities = {{0, 1.2}, {1, -0.2}};
  EXPECT_THROW(d.validate(), std::invalid_argument);
}

TEST(transport, second_moment_twenty_steps_regression) {
  const auto ordered = moment_series(kInit51, Ordered{hadamard_coin()}, 20);
  // Independent NumPy walk.
  EXPECT_NEAR(ordered.back().m2, 117.59542846679648, 1e-9);
  EXPECT_NEAR(ordered.back().m2, 0.29 * 400, 0.03 * 400);
  const auto disordered = moment_series(kInit51, DynamicSequence{parse_sequence(kEnhancingSequence)}, 20);
  EXPECT_NEAR(disordered.back().m2, 63.54052734374977, 1e-9);
}

TEST(transport, fit_recovers_exact_power_law) {
  for (FitMethod m : {FitMethod::NonlinearLeastSquares, FitMethod::LogLog}) {
    const auto fit = fit_power_law(synthetic(3.0, 2.0, 20), 1, -1, m);
    EXPECT_NEAR(fit.prefactor, 3.0, 1e-12);
    EXPECT_NEAR(fit.exponent, 2.0, 1e-12);
    EXPECT_LT(fit.residual, 1e-12);
    EXPECT_EQ(fit.points, 20);
  }
  const auto fit = fit_power_law(synthetic(0.6, 1.54, 20), 1);
  EXPECT_NEAR(fit.prefactor, 0.6, 1e-12);
  EXPECT_NEAR(fit.exponent, 1.54, 1e-12);
}

TEST(transport, fit_window_and_errors) {
  const auto series = synthetic(2.0, 1.5, 20);
  const auto fit = fit_power_law(series, 5, 10);
  EXPECT_EQ(fit.t_min, 5);
  EXPECT_EQ(fit.t_max, 10);
  EXPECT_EQ(fit.points, 6);
  EXPECT_THROW(fit_power_law(series, 0), std::invalid_argument);
  EXPECT_THROW(fit_power_law(series, 19), std::invalid_argument);
  MomentSeries zero = series;
  zero[3].m2 = 0.0;
  EXPECT_THROW(fit_power_law(zero, 1), std::invalid_argument);
}

TEST(transport, classical_baseline_is_exact_diffusion) {
  const auto c = classical_baseline(20);
  EXPECT_EQ(c[1].m2, 1.0);
  EXPECT_EQ(c[20].m2, 20.0);
  const auto fit = fit_power_law(c, 1);
  EXPECT_NEAR(fit.exponent, 1.0, 1e-12);
  EXPECT_NEAR(fit.prefactor, 1.0, 1e-12);
}

TEST(transport, ordered_walk_is_ballistic) {
  const auto fit = fit_power_law(moment_series(kInit51, Ordered{hadamard_coin()}, 20), 1, 20);
  EXPECT_NEAR(fit.exponent, 2.0, 0.1);
  EXPECT_NEAR(fit.prefactor, 0.29, 0.03);
}

TEST(transport, enhancing_sequence_is_sub_ballistic) {
  const auto fit =
      fit_power_law(moment_series(kInit51, DynamicSequence{parse_sequence(kEnhancingSequence)}, 20), 1, 20);
  EXPECT_NEAR(fit.exponent, 1.54, 0.12);
  EXPECT_NEAR(fit.prefactor, 0.6, 0.12);
}

TEST(transport, log_log_fit_differs_on_walk_data) {
  // Unweighted log-space regression is dominated by the small-t points.
  const auto series = moment_series(kInit51, Ordered{hadamard_coin()}, 20);
  const auto loglog = fit_power_law(series, 1, 20, FitMethod::LogLog);
  EXPECT_NEAR(loglog.exponent, 1.7161910076728963, 1e-9);
  EXPECT_NEAR(loglog.prefactor, 0.5987771448934478, 1e-9);
}

TEST(transport, moments_respect_light_cone_and_ordering) {
  const auto ordered = moment_series(kInit51, Ordered{hadamard_coin()}, 20);
  const auto disordered = moment_series(kInit51, DynamicSequence{parse_sequence(kEnhancingSequence)}, 20);
  const auto classical = classical_baseline(20);
  for (int t = 0; t <= 20; ++t) {
    EXPECT_LE(ordered[static_cast<std::size_t>(t)].m2, t * t + 1e-9);
    EXPECT_LE(disordered[static_cast<std::size_t>(t)].m2, t * t + 1e-9);
  }
  EXPECT_LT(classical[20].m2, disordered[20].m2);
  EXPECT_LT(disordered[20].m2, ordered[20].m2);
}

TEST(transport, ensemble_average_is_between_limits) {
  const auto mean = ensemble_moment_series(kInit51, default_alphabet(), 20, 32, 100);
  ASSERT_EQ(mean.size(), 21u);
  EXPECT_GT(mean[20].m2, 20.0);
  EXPECT_LT(mean[20].m2, 400.0);
  const auto again = ensemble_moment_series(kInit51, default_alphabet(), 20, 32, 100);
  EXPECT_EQ(mean[20].m2, again[20].m2);
}
