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

// Reduced coin density matrices and coin-position von Neumann entropy.

#include <array>
#include <vector>

#include "qwalk/walk.hpp"

namespace qwalk {

using Matrix2 = Coin2<double>;

/// A validated 2x2 density matrix: Hermitian, unit trace, PSD up to 1e-10.
class DensityMatrix2 {
 public:
  /// Validates with tolerance `tol` on Hermiticity and trace.
  explicit DensityMatrix2(const Matrix2& m, double tol = 1e-9);

  static DensityMatrix2 pure(const Spinor& psi);
  static DensityMatrix2 maximally_mixed();
  /// (I + r . sigma) / 2 for |r| <= 1.
  static DensityMatrix2 from_bloch(double rx, double ry, double rz);

  const Matrix2& matrix() const { return m_; }
  std::complex<double> operator()(int r, int c) const { return m_(r, c); }

  /// Ascending eigenvalues from the closed form tr/2 -+ sqrt(((r00-r11)/2)^2 + |r01|^2).
  std::array<double, 2> eigenvalues() const;
  std::array<double, 3> bloch() const;

 private:
  Matrix2 m_;
};

struct SiteState {
  int site = 0;
  double probability = 0.0;
  DensityMatrix2 rho;
};

/// Per-site probabilities and local coin states; sites with p <= 1e-14 are omitted.
struct SiteDecomposition {
  std::vector<SiteState> sites;

  /// sum_j p_j rho_j
  Matrix2 mixture() const;
  double total_probability() const;
};

inline constexpr double kEmptySiteThreshold = 1e-14;

DensityMatrix2 reduced_coin_density(const WalkState& state);
SiteDecomposition site_decomposition(const WalkState& state);

/// -sum lambda log2 lambda, eigenvalues clamped to [0, 1]; those below 1e-12 contribute 0.
double von_neumann_entropy(const DensityMatrix2& rho);
double binary_entropy(double p);

struct EntropyPoint {
  int t = 0;
  double entropy = 0.0;
  std::array<double, 2> eigenvalues{};
};

std::vector<EntropyPoint> entropy_curve(const InitialCoin& init, const CoinPolicy& policy, int steps);

/// Mean entropy over t in [first_t, last_t] of a curve.
double tail_average(const std::vector<EntropyPoint>& curve, int first_t, int last_t);

/// Long-time value of S_E: mean over the final 64 steps of a 1024-step run.
double asymptotic_entropy(const InitialCoin& init, const CoinPolicy& policy, int steps = 1024,
                          int window = 64);

}  // namespace qwalk
