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

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace qwalk {

const char* outcome_name(Outcome o) {
  static constexpr const char* names[] = {"H", "V", "D", "A", "L", "R"};
  return names[static_cast<int>(o)];
}

const char* basis_name(Outcome o) {
  switch (o) {
    case Outcome::H:
    case Outcome::V:
      return "Z";
    case Outcome::D:
    case Outcome::A:
      return "X";
    default:
      return "Y";
  }
}

namespace {

std::array<Spinor, 6> projector_states() {
  const double s = 1.0 / std::sqrt(2.0);
  const std::complex<double> i(0.0, 1.0);
  std::array<Spinor, 6> e;
  e[0] << 1.0, 0.0;
  e[1] << 0.0, 1.0;
  e[2] << s, s;
  e[3] << s, -s;
  e[4] << s, i * s;
  e[5] << s, -i * s;
  return e;
}

// Basis pairs as (plus, minus) outcome indices: Z, X, Y.
constexpr std::array<std::array<int, 2>, 3> kPairs = {{{0, 1}, {2, 3}, {4, 5}}};

Matrix2 bloch_matrix(double rx, double ry, double rz) {
  Matrix2 m;
  m << 0.5 * (1.0 + rz), std::complex<double>(0.5 * rx, -0.5 * ry), std::complex<double>(0.5 * rx, 0.5 * ry),
      0.5 * (1.0 - rz);
  return m;
}

// Clamps negative eigenvalues to zero and renormalizes the trace.
DensityMatrix2 nearest_physical(const Matrix2& m) {
  Eigen::SelfAdjointEigenSolver<Matrix2> es(m);
  Eigen::Vector2d lambda = es.eigenvalues().cwiseMax(0.0);
  lambda /= lambda.sum();
  const Matrix2 out = es.eigenvectors() * lambda.cast<std::complex<double>>().asDiagonal() * es.eigenvectors().adjoint();
  return DensityMatrix2(out);
}

// Stokes inversion; a pair with zero total contributes 0 on its axis when `lenient`.
DensityMatrix2 invert(const OutcomeCounts& n, bool lenient) {
  std::array<double, 3> r{};  // z, x, y
  for (std::size_t k = 0; k < 3; ++k) {
    const double plus = n[static_cast<std::size_t>(kPairs[k][0])];
    const double minus = n[static_cast<std::size_t>(kPairs[k][1])];
    if (plus < 0.0 || minus < 0.0) throw std::invalid_argument("reconstruct_site: negative counts");
    const double tot = plus + minus;
    if (tot <= 0.0) {
      if (!lenient) throw std::invalid_argument("reconstruct_site: a basis pair has zero total counts");
      continue;
    }
    r[k] = (plus - minus) / tot;
  }
  return nearest_physical(bloch_matrix(r[1], r[2], r[0]));
}

}  // namespace

OutcomeCounts projector_probabilities(const WalkState& state, int site) {
  const double p = state.probability(site);
  if (p <= kEmptySiteThreshold) {
    throw std::invalid_argument("projector_probabilities: site " + std::to_string(site) + " is empty");
  }
  const Spinor psi = state.spinor(site);
  const auto e = projector_states();
  OutcomeCounts out{};
  for (std::size_t k = 0; k < 6; ++k) out[k] = std::norm(e[k].dot(psi));
  return out;
}

ProjectionCounts simulate_counts(const WalkState& state, std::int64_t total_counts, std::uint64_t seed,
                                 bool noiseless) {
  if (total_counts < 1) throw std::invalid_argument("simulate_counts: total_counts must be at least 1");
  ProjectionCounts out;
  out.total = static_cast<double>(total_counts);
  out.noiseless = noiseless;

  std::vector<int> sites;
  std::vector<OutcomeCounts> probs;
  for (int j = state.min_site(); j <= state.max_site(); ++j) {
    if (state.probability(j) <= kEmptySiteThreshold) continue;
    sites.push_back(j);
    probs.push_back(projector_probabilities(state, j));
    out.sites[j] = OutcomeCounts{};
  }

  std::mt19937_64 rng(seed);
  for (std::size_t pair = 0; pair < 3; ++pair) {
    const std::int64_t budget = total_counts / 3 + (static_cast<std::int64_t>(pair) < total_counts % 3 ? 1 : 0);
    double mass = 0.0;
    for (const auto& pr : probs) mass += pr[static_cast<std::size_t>(kPairs[pair][0])] + pr[static_cast<std::size_t>(kPairs[pair][1])];

    std::int64_t remaining = budget;
    double remaining_mass = mass;
    for (std::size_t s = 0; s < sites.size(); ++s) {
      for (int o : kPairs[pair]) {
        const double cell = probs[s][static_cast<std::size_t>(o)];
        double drawn;
        if (noiseless) {
          drawn = static_cast<double>(budget) * cell / mass;
        } else {
          const double q = remaining_mass > 0.0 ? std::clamp(cell / remaining_mass, 0.0, 1.0) : 0.0;
          std::binomial_distribution<std::int64_t> binom(remaining, q);
          const std::int64_t k = remaining > 0 ? binom(rng) : 0;
          remaining -= k;
          remaining_mass -= cell;
          drawn = static_cast<double>(k);
        }
        out.sites[sites[s]][static_cast<std::size_t>(o)] = drawn;
      }
    }
  }
  return out;
}

DensityMatrix2 reconstruct_site(const OutcomeCounts& counts) { return invert(counts, false); }

double fidelity(const DensityMatrix2& a, const DensityMatrix2& b) {
  const double overlap = (a.matrix() * b.matrix()).trace().real();
  const double det = a.matrix().determinant().real() * b.matrix().determinant().real();
  return std::clamp(overlap + 2.0 * std::sqrt(std::max(det, 0.0)), 0.0, 1.0);
}

double similarity(const PositionDistribution& p, const PositionDistribution& q) {
  p.validate(1e-6);
  q.validate(1e-6);
  double s = 0.0;
  for (const auto& [j, pj] : p.probabilities) {
    auto it = q.probabilities.find(j);
    if (it != q.probabilities.end()) s += std::sqrt(pj * it->second);
  }
  return std::clamp(s, 0.0, 1.0);
}

TomographyResult reconstruct(const WalkState& truth, const ProjectionCounts& counts) {
  TomographyResult r;
  r.total_counts = static_cast<std::int64_t>(counts.total);
  r.noiseless = counts.noiseless;

  double hv_total = 0.0;
  for (const auto& [j, n] : counts.sites) hv_total += n[0] + n[1];
  if (hv_total <= 0.0) throw std::invalid_argument("tomography: no counts in the H/V basis");

  Matrix2 rho_c = Matrix2::Zero();
  PositionDistribution measured;
  for (const auto& [j, n] : counts.sites) {
    const double p_hat = (n[0] + n[1]) / hv_total;
    if (p_hat <= 0.0) continue;
    const DensityMatrix2 rho = invert(n, true);
    rho_c += p_hat * rho.matrix();
    measured.probabilities[j] = p_hat;
    const double f = truth.probability(j) > kEmptySiteThreshold
                         ? fidelity(rho, DensityMatrix2::pure(truth.spinor(j)))
                         : 0.0;
    r.sites.push_back({j, p_hat, rho, f});
  }

  r.rho_c = DensityMatrix2(rho_c);
  r.entropy = von_neumann_entropy(r.rho_c);
  const DensityMatrix2 exact = reduced_coin_density(truth);
  r.exact_entropy = von_neumann_entropy(exact);
  r.fidelity = fidelity(r.rho_c, exact);
  r.similarity = similarity(measured, position_distribution(truth));
  return r;
}

TomographyResult tomographic_entropy(const WalkState& state, std::int64_t total_counts, std::uint64_t seed,
                                     bool noiseless) {
  TomographyResult r = reconstruct(state, simulate_counts(state, total_counts, seed, noiseless));
  r.seed = seed;
  return r;
}

}  // namespace qwalk
