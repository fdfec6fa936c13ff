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

#include "qwalk/tomography.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

using namespace qwalk;

namespace {

const InitialCoin kInit51{51.0, 0.0};

WalkState one_hadamard_step() { return step(WalkState::localized(Spinor(1.0, 0.0)), hadamard_coin()); }

Matrix2 sqrtm(const Matrix2& m) {
  Eigen::SelfAdjointEigenSolver<Matrix2> es(m);
  const Eigen::Vector2d s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.cast<std::complex<double>>().asDiagonal() * es.eigenvectors().adjoint();
}

double uhlmann(const DensityMatrix2& a, const DensityMatrix2& b) {
  const Matrix2 ra = sqrtm(a.matrix());
  const Matrix2 inner = ra * b.matrix() * ra;
  const double t = sqrtm(0.5 * (inner + inner.adjoint())).trace().real();
  return t * t;
}

OutcomeCounts counts_from_bloch(double rx, double ry, double rz, double n) {
  return {n * (1 + rz) / 2, n * (1 - rz) / 2, n * (1 + rx) / 2, n * (1 - rx) / 2, n * (1 + ry) / 2, n * (1 - ry) / 2};
}

DensityMatrix2 random_density(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix2 a;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) a(r, c) = {g(rng), g(rng)};
  Matrix2 m = a * a.adjoint();
  return DensityMatrix2(m / m.trace().real());
}

}  // namespace

TEST(tomography, projector_probabilities_after_one_step) {
  const auto p = projector_probabilities(one_hadamard_step(), 1);
  EXPECT_NEAR(p[0], 0.5, 1e-15);   // H
  EXPECT_NEAR(p[1], 0.0, 1e-15);   // V
  EXPECT_NEAR(p[2], 0.25, 1e-15);  // D
  EXPECT_NEAR(p[3], 0.25, 1e-15);  // A
  EXPECT_NEAR(p[4], 0.25, 1e-15);  // L
  EXPECT_NEAR(p[5], 0.25, 1e-15);  // R
  EXPECT_THROW(projector_probabilities(one_hadamard_step(), 0), std::invalid_argument);
}

TEST(tomography, projector_pairs_sum_to_site_probability) {
  const auto s = final_state(kInit51, DynamicSequence{parse_sequence(kEnhancingSequence)}, 20);
  for (int j = s.min_site(); j <= s.max_site(); ++j) {
    if (s.probability(j) <= kEmptySiteThreshold) continue;
    const auto p = projector_probabilities(s, j);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(p[2 * k] + p[2 * k + 1], s.probability(j), 1e-14);
  }
}

TEST(tomography, names) {
  EXPECT_STREQ(outcome_name(Outcome::L), "L");
  EXPECT_STREQ(basis_name(Outcome::V), "Z");
  EXPECT_STREQ(basis_name(Outcome::A), "X");
  EXPECT_STREQ(basis_name(Outcome::R), "Y");
}

TEST(tomography, reconstruct_known_bloch_vectors) {
  const double r[][3] = {{0, 0, 1}, {1, 0, 0}, {0, -1, 0}, {0.3, -0.2, 0.5}, {0, 0, 0}};
  for (const auto& v : r) {
    const auto rho = reconstruct_site(counts_from_bloch(v[0], v[1], v[2], 1000.0));
    const auto b = rho.bloch();
    EXPECT_NEAR(b[0], v[0], 1e-12);
    EXPECT_NEAR(b[1], v[1], 1e-12);
    EXPECT_NEAR(b[2], v[2], 1e-12);
  }
}

TEST(tomography, unphysical_estimate_is_clamped) {
  const auto rho = reconstruct_site(counts_from_bloch(0.9, 0.9, 0.9, 1000.0));
  const auto ev = rho.eigenvalues();
  EXPECT_NEAR(ev[0], 0.0, 1e-12);
  EXPECT_NEAR(ev[1], 1.0, 1e-12);
  const auto b = rho.bloch();
  const double u = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(b[0], u, 1e-12);
  EXPECT_NEAR(b[1], u, 1e-12);
  EXPECT_NEAR(b[2], u, 1e-12);
}

TEST(tomography, reconstruct_rejects_bad_counts) {
  EXPECT_THROW(reconstruct_site({10, 0, 0, 0, 5, 5}), std::invalid_argument);
  EXPECT_THROW(reconstruct_site({10, -1, 3, 3, 5, 5}), std::invalid_argument);
}

TEST(tomography, fidelity_reference_values) {
  const auto up = DensityMatrix2::pure(Spinor(1.0, 0.0));
  const auto plus = DensityMatrix2::pure(Spinor(1.0, 1.0));
  EXPECT_NEAR(fidelity(up, plus), 0.5, 1e-15);
  EXPECT_NEAR(fidelity(up, DensityMatrix2::maximally_mixed()), 0.5, 1e-15);
  EXPECT_NEAR(fidelity(up, up), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(up, DensityMatrix2::pure(Spinor(0.0, 1.0))), 0.0, 1e-15);
}

TEST(tomography, fidelity_matches_matrix_square_root) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const auto a = random_density(rng);
    const auto b = random_density(rng);
    EXPECT_NEAR(fidelity(a, b), uhlmann(a, b), 1e-10);
    EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-14);
  }
}

TEST(tomography, similarity_reference_values) {
  PositionDistribution p, q, r;
  p.probabilities = {{0, 0.5}, {1, 0.5}};
  q.probabilities = {{0, 1.0}};
  r.probabilities = {{2, 1.0}};
  EXPECT_NEAR(similarity(p, q), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(similarity(p, p), 1.0, 1e-15);
  EXPECT_EQ(similarity(q, r), 0.0);
}

TEST(tomography, noiseless_round_trip) {
  for (const CoinPolicy& policy :
       {CoinPolicy{Ordered{hadamard_coin()}}, CoinPolicy{DynamicSequence{parse_sequence(kEnhancingSequence)}}}) {
    const auto s = final_state(kInit51, policy, 20);
    const auto r = tomographic_entropy(s, 24000, 0, true);
    EXPECT_NEAR(r.entropy, r.exact_entropy, 1e-10);
    EXPECT_NEAR(r.fidelity, 1.0, 1e-10);
    EXPECT_NEAR(r.similarity, 1.0, 1e-10);
    for (const auto& site : r.sites) EXPECT_NEAR(site.fidelity, 1.0, 1e-9);
  }
}

TEST(tomography, counts_follow_expected_rates) {
  const auto s = one_hadamard_step();
  const auto c = simulate_counts(s, 24000, 7);
  // Z pair gets 8000 counts split between H at j=1 and V at j=-1.
  const double h = c.sites.at(1)[0];
  EXPECT_NEAR(h, 4000.0, 5.0 * std::sqrt(8000 * 0.25));
  EXPECT_EQ(c.sites.at(1)[1], 0.0);
  double total = 0.0;
  for (const auto& [j, n] : c.sites)
    for (double x : n) total += x;
  EXPECT_EQ(total, 24000.0);
}

TEST(tomography, counts_are_seed_deterministic) {
  const auto s = final_state(kInit51, Ordered{hadamard_coin()}, 10);
  const auto a = simulate_counts(s, 5000, 3);
  const auto b = simulate_counts(s, 5000, 3);
  EXPECT_EQ(a.sites, b.sites);
  EXPECT_NE(a.sites, simulate_counts(s, 5000, 4).sites);
  EXPECT_THROW(simulate_counts(s, 0, 3), std::invalid_argument);
}

TEST(tomography, noisy_estimate_close_to_exact) {
  const auto s = final_state(kInit51, DynamicSequence{parse_sequence(kEnhancingSequence)}, 20);
  const auto r = tomographic_entropy(s, 24000, 1);
  EXPECT_NEAR(r.entropy, r.exact_entropy, 0.05);
  EXPECT_GT(r.fidelity, 0.99);
  EXPECT_GT(r.similarity, 0.99);
  EXPECT_EQ(r.seed, 1u);
  EXPECT_EQ(r.total_counts, 24000);
}
