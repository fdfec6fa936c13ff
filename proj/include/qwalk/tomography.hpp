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

#pragma once

// Emulated measurement chain: six-outcome projective counting per site,
// linear-inversion reconstruction of each local coin state, and fidelity /
// similarity scoring against the exact walk.
//
// Projector conventions: H = |up>, V = |down>, D = (|up> + |down>)/sqrt2,
// A = (|up> - |down>)/sqrt2, L = (|up> + i|down>)/sqrt2, R = (|up> - i|down>)/sqrt2.

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "qwalk/entanglement.hpp"
#include "qwalk/transport.hpp"

namespace qwalk {

enum class Outcome { H = 0, V, D, A, L, R };
inline constexpr std::array<Outcome, 6> kOutcomes = {Outcome::H, Outcome::V, Outcome::D,
                                                     Outcome::A, Outcome::L, Outcome::R};
const char* outcome_name(Outcome o);
/// "Z" for H/V, "X" for D/A, "Y" for L/R.
const char* basis_name(Outcome o);

using OutcomeCounts = std::array<double, 6>;

/// Per-site counts for the six projectors. Real-valued so the noiseless
/// limit can carry exact expected counts.
struct ProjectionCounts {
  std::map<int, OutcomeCounts> sites;
  double total = 0.0;
  bool noiseless = false;
};

/// Joint (site, outcome) probabilities |<e|psi_j>|^2 for the six projectors at `site`.
OutcomeCounts projector_probabilities(const WalkState& state, int site);

/// Splits `total_counts` equally over the three basis pairs and draws a
/// multinomial over (site, outcome) within each pair. With `noiseless`
/// the expected counts are returned instead.
ProjectionCounts simulate_counts(const WalkState& state, std::int64_t total_counts, std::uint64_t seed,
                                 bool noiseless = false);

/// Stokes-vector linear inversion, projected to the nearest physical state.
/// Rejects sites where any basis pair has zero total.
DensityMatrix2 reconstruct_site(const OutcomeCounts& counts);

/// Uhlmann fidelity, qubit closed form Tr(ab) + 2 sqrt(det a det b).
double fidelity(const DensityMatrix2& a, const DensityMatrix2& b);

/// Bhattacharyya coefficient sum_x sqrt(p(x) q(x)).
double similarity(const PositionDistribution& p, const PositionDistribution& q);

struct SiteTomography {
  int site = 0;
  double probability = 0.0;
  DensityMatrix2 rho;
  double fidelity = 0.0;
};

struct TomographyResult {
  std::vector<SiteTomography> sites;
  DensityMatrix2 rho_c = DensityMatrix2::maximally_mixed();
  double entropy = 0.0;
  double exact_entropy = 0.0;
  double fidelity = 0.0;
  double similarity = 0.0;
  std::int64_t total_counts = 0;
  std::uint64_t seed = 0;
  bool noiseless = false;
};

/// Counts -> per-site reconstruction -> p_j from the H/V pair -> rho_C -> S_E.
TomographyResult tomographic_entropy(const WalkState& state, std::int64_t total_counts, std::uint64_t seed,
                                     bool noiseless = false);

/// Reconstruction from an existing counts table against the exact state.
TomographyResult reconstruct(const WalkState& truth, const ProjectionCounts& counts);

}  // namespace qwalk
