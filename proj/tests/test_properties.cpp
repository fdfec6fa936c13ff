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

// Randomized invariants. Each property draws its cases from a fixed seed.

#include <random>

#include "dense_oracle.hpp"
#include "gtest/gtest.h"
#include "qwalk/entanglement.hpp"
#include "qwalk/sequence.hpp"
#include "qwalk/transport.hpp"

using namespace qwalk;
using qwalk::testing::DenseWalk;

namespace {

constexpr int kCases = 1000;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  std::uint64_t seed() { return rng(); }

  InitialCoin init() { return {uniform(0.0, 180.0), uniform(0.0, 359.999)}; }

  CoinSequence sequence(int n) {
    return CoinSequence::from_bits(rng() & ((std::uint64_t{1} << n) - 1), n);
  }

  Coin unitary() {
    const double a = uniform(0, 2 * M_PI), b = uniform(0, 2 * M_PI), c = uniform(0, 2 * M_PI), d = uniform(0, 2 * M_PI);
    return std::polar(1.0, a) * exp_minus_i_sigma_z(b) * exp_minus_i_sigma_y(c) * exp_minus_i_sigma_z(d);
  }

  CoinPolicy policy(int steps) {
    switch (integer(0, 4)) {
      case 0:
        return Ordered{unitary()};
      case 1:
        return DynamicSequence{sequence(steps)};
      case 2:
        return DynamicRandom{default_alphabet(), seed()};
      case 3:
        return StaticRandom{{unitary(), unitary()}, seed()};
      default:
        return StaticAndDynamic{default_alphabet(), seed(), seed()};
    }
  }
};

WalkState run_from(const Spinor& chi, const CoinPolicy& policy, int steps) {
  const CoinSchedule schedule(policy, steps);
  WalkState s = WalkState::localized(chi);
  for (int t = 0; t < steps; ++t) s = advance(s, schedule, t);
  return s;
}

}  // namespace

TEST(properties, norm_and_parity_preserved) {
  Gen g(101);
  for (int k = 0; k < kCases; ++k) {
    const int steps = g.integer(1, 40);
    const auto s = final_state(g.init(), g.policy(steps), steps);
    const auto r = check_invariants(s);
    ASSERT_LT(r.norm_error, 1e-12) << "case " << k;
    ASSERT_EQ(r.parity_leak, 0.0) << "case " << k;
    ASSERT_EQ(s.min_site(), -steps);
    ASSERT_EQ(s.max_site(), steps);
  }
}

TEST(properties, entropy_within_bounds_and_densities_physical) {
  Gen g(202);
  for (int k = 0; k < kCases; ++k) {
    const int steps = g.integer(1, 30);
    const auto s = final_state(g.init(), g.policy(steps), steps);
    const DensityMatrix2 rho = reduced_coin_density(s);
    const auto ev = rho.eigenvalues();
    ASSERT_GE(ev[0], -1e-12);
    ASSERT_NEAR(ev[0] + ev[1], 1.0, 1e-12);
    ASSERT_LT((rho.matrix() - rho.matrix().adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    const double e = von_neumann_entropy(rho);
    ASSERT_GE(e, 0.0);
    ASSERT_LE(e, 1.0);
    for (const auto& site : site_decomposition(s).sites) {
      const auto sev = site.rho.eigenvalues();
      ASSERT_GE(sev[0], -1e-10);
      ASSERT_NEAR(sev[0] + sev[1], 1.0, 1e-10);
    }
  }
}

TEST(properties, global_phase_does_not_change_entropy) {
  Gen g(303);
  for (int k = 0; k < kCases; ++k) {
    const int steps = g.integer(1, 25);
    const auto policy = g.policy(steps);
    const Spinor chi = g.init().spinor();
    const auto phase = std::polar(1.0, g.uniform(0, 2 * M_PI));
    const double a = von_neumann_entropy(reduced_coin_density(run_from(chi, policy, steps)));
    const double b = von_neumann_entropy(reduced_coin_density(run_from(phase * chi, policy, steps)));
    ASSERT_NEAR(a, b, 1e-12) << "case " << k;
  }
}

TEST(properties, conjugate_phase_symmetry_for_real_coins) {
  // Real coins commute with complex conjugation, so phi and 360 - phi agree.
  Gen g(404);
  for (int k = 0; k < kCases; ++k) {
    const int steps = g.integer(1, 25);
    const Coin c = exp_minus_i_sigma_y(g.uniform(0, 2 * M_PI));
    const double theta = g.uniform(0, 180), phi = g.uniform(0.001, 359.999);
    const double a = von_neumann_entropy(reduced_coin_density(final_state({theta, phi}, Ordered{c}, steps)));
    const double b = von_neumann_entropy(reduced_coin_density(final_state({theta, 360.0 - phi}, Ordered{c}, steps)));
    ASSERT_NEAR(a, b, 1e-12) << "case " << k;
    const auto ma = moment_series({theta, phi}, Ordered{c}, steps).back().m2;
    const auto mb = moment_series({theta, 360.0 - phi}, Ordered{c}, steps).back().m2;
    ASSERT_NEAR(ma, mb, 1e-9 * std::max(1.0, ma));
  }
}

TEST(properties, lz_complexity_monotone_in_prefix) {
  Gen g(505);
  for (int k = 0; k < kCases; ++k) {
    const int n = g.integer(2, 40);
    const auto s = g.sequence(n);
    const int c = lz_complexity(s);
    ASSERT_LE(lz_complexity(s.prefix(n - 1)), c) << s.text();
    ASSERT_GE(c, 1);
    ASSERT_LE(c, n);
    std::string joined;
    for (const auto& w : lz_parse(s)) joined += w;
    ASSERT_EQ(joined, s.binary());
  }
}

TEST(properties, distribution_sums_to_one_and_moment_bounded) {
  Gen g(606);
  for (int k = 0; k < kCases; ++k) {
    const int steps = g.integer(1, 30);
    const auto d = position_distribution(final_state(g.init(), g.policy(steps), steps));
    ASSERT_NO_THROW(d.validate(1e-12));
    const double m2 = second_moment(d);
    ASSERT_GE(m2, 0.0);
    ASSERT_LE(m2, steps * steps * (1 + 1e-12));
  }
}

TEST(properties, random_policies_match_dense_operator) {
  Gen g(707);
  for (int k = 0; k < 50; ++k) {
    const int steps = g.integer(1, 6);
    const auto init = g.init();
    const auto policy = g.policy(steps);
    const DenseWalk dense(steps);
    const auto v = dense.run(dense.embed(init.spinor()), CoinSchedule(policy, steps));
    ASSERT_LT(dense.distance(v, final_state(init, policy, steps)), 1e-12) << "case " << k;
  }
}
