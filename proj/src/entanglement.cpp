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

#include "qwalk/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qwalk {

DensityMatrix2::DensityMatrix2(const Matrix2& m, double tol) : m_(m) {
  if (!m.allFinite()) throw std::invalid_argument("density matrix: non-finite entries");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) {
    throw std::invalid_argument("density matrix: not Hermitian (defect " + std::to_string(herm) + ")");
  }
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol) {
    throw std::invalid_argument("density matrix: trace " + std::to_string(tr) + " is not 1");
  }
  // Symmetrize away rounding dust so downstream closed forms see an exact Hermitian matrix.
  m_ = 0.5 * (m + m.adjoint());
  if (eigenvalues()[0] < -1e-10) throw std::invalid_argument("density matrix: negative eigenvalue");
}

DensityMatrix2 DensityMatrix2::pure(const Spinor& psi) {
  const double n2 = psi.squaredNorm();
  if (n2 <= 0.0) throw std::invalid_argument("density matrix: zero spinor");
  return DensityMatrix2(psi * psi.adjoint() / n2);
}

DensityMatrix2 DensityMatrix2::maximally_mixed() { return DensityMatrix2(0.5 * Matrix2::Identity()); }

DensityMatrix2 DensityMatrix2::from_bloch(double rx, double ry, double rz) {
  if (rx * rx + ry * ry + rz * rz > 1.0 + 1e-12) throw std::invalid_argument("density matrix: Bloch vector longer than 1");
  Matrix2 m;
  m << 0.5 * (1.0 + rz), std::complex<double>(0.5 * rx, -0.5 * ry), std::complex<double>(0.5 * rx, 0.5 * ry),
      0.5 * (1.0 - rz);
  return DensityMatrix2(m);
}

std::array<double, 2> DensityMatrix2::eigenvalues() const {
  const double half_tr = 0.5 * (m_(0, 0).real() + m_(1, 1).real());
  const double half_diff = 0.5 * (m_(0, 0).real() - m_(1, 1).real());
  const double radius = std::sqrt(half_diff * half_diff + std::norm(m_(0, 1)));
  return {half_tr - radius, half_tr + radius};
}

std::array<double, 3> DensityMatrix2::bloch() const {
  return {2.0 * m_(1, 0).real(), 2.0 * m_(1, 0).imag(), (m_(0, 0) - m_(1, 1)).real()};
}

Matrix2 SiteDecomposition::mixture() const {
  Matrix2 m = Matrix2::Zero();
  for (const auto& s : sites) m += s.probability * s.rho.matrix();
  return m;
}

double SiteDecomposition::total_probability() const {
  double p = 0.0;
  for (const auto& s : sites) p += s.probability;
  return p;
}

namespace {

void require_normalized(const WalkState& state) {
  const double n2 = state.norm_squared();
  if (std::abs(n2 - 1.0) > 1e-6) {
    throw std::invalid_argument("walk state is not normalized (norm^2 = " + std::to_string(n2) + ")");
  }
}

}  // namespace

DensityMatrix2 reduced_coin_density(const WalkState& state) {
  require_normalized(state);
  const auto& amps = state.amplitudes();
  return DensityMatrix2(amps * amps.adjoint());
}

SiteDecomposition site_decomposition(const WalkState& state) {
  require_normalized(state);
  SiteDecomposition out;
  for (int j = state.min_site(); j <= state.max_site(); ++j) {
    const double p = state.probability(j);
    if (p <= kEmptySiteThreshold) continue;
    out.sites.push_back({j, p, DensityMatrix2::pure(state.spinor(j))});
  }
  return out;
}

double binary_entropy(double p) {
  double s = 0.0;
  for (double q : {p, 1.0 - p}) {
    q = std::clamp(q, 0.0, 1.0);
    if (q > 1e-12) s -= q * std::log2(q);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix2& rho) {
  double s = 0.0;
  for (double lambda : rho.eigenvalues()) {
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda > 1e-12) s -= lambda * std::log2(lambda);
  }
  return std::clamp(s, 0.0, 1.0);
}

std::vector<EntropyPoint> entropy_curve(const InitialCoin& init, const CoinPolicy& policy, int steps) {
  std::vector<EntropyPoint> curve;
  curve.reserve(static_cast<std::size_t>(steps) + 1);
  evolve_visit(init, policy, steps, [&](const WalkState& s) {
    const DensityMatrix2 rho = reduced_coin_density(s);
    curve.push_back({s.steps(), von_neumann_entropy(rho), rho.eigenvalues()});
  });
  return curve;
}

double tail_average(const std::vector<EntropyPoint>& curve, int first_t, int last_t) {
  double sum = 0.0;
  int n = 0;
  for (const auto& p : curve) {
    if (p.t >= first_t && p.t <= last_t) {
      sum += p.entropy;
      ++n;
    }
  }
  if (n == 0) throw std::invalid_argument("tail_average: empty window");
  return sum / n;
}

double asymptotic_entropy(const InitialCoin& init, const CoinPolicy& policy, int steps, int window) {
  if (window < 1 || window > steps) throw std::invalid_argument("asymptotic_entropy: bad window");
  return tail_average(entropy_curve(init, policy, steps), steps - window + 1, steps);
}

}  // namespace qwalk
