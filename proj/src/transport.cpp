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
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/LevenbergMarquardt>

namespace qwalk {

double PositionDistribution::total() const {
  double s = 0.0;
  for (const auto& [j, p] : probabilities) s += p;
  return s;
}

void PositionDistribution::validate(double tol) const {
  for (const auto& [j, p] : probabilities) {
    if (!(p >= 0.0)) throw std::invalid_argument("distribution: negative probability at site " + std::to_string(j));
  }
  if (std::abs(total() - 1.0) > tol) {
    throw std::invalid_argument("distribution: probabilities sum to " + std::to_string(total()));
  }
}

PositionDistribution position_distribution(const WalkState& state) {
  PositionDistribution d;
  for (int j = state.min_site(); j <= state.max_site(); ++j) d.probabilities.emplace(j, state.probability(j));
  return d;
}

double second_moment(const PositionDistribution& dist) {
  double m2 = 0.0;
  for (const auto& [j, p] : dist.probabilities) m2 += p * static_cast<double>(j) * j;
  return m2;
}

MomentSeries moment_series(const std::vector<WalkState>& trajectory) {
  MomentSeries out;
  out.reserve(trajectory.size());
  for (const auto& s : trajectory) out.push_back({s.steps(), second_moment(position_distribution(s))});
  return out;
}

MomentSeries moment_series(const InitialCoin& init, const CoinPolicy& policy, int steps) {
  MomentSeries out;
  evolve_visit(init, policy, steps,
               [&](const WalkState& s) { out.push_back({s.steps(), second_moment(position_distribution(s))}); });
  return out;
}

MomentSeries ensemble_moment_series(const InitialCoin& init, const CoinAlphabet& alphabet, int steps,
                                    int walks, std::uint64_t base_seed) {
  if (walks < 1) throw std::invalid_argument("ensemble: need at least one walk");
  MomentSeries mean = classical_baseline(steps);
  for (auto& p : mean) p.m2 = 0.0;
  for (int w = 0; w < walks; ++w) {
    const auto one = moment_series(init, DynamicRandom{alphabet, base_seed + static_cast<std::uint64_t>(w)}, steps);
    for (std::size_t k = 0; k < one.size(); ++k) mean[k].m2 += one[k].m2;
  }
  for (auto& p : mean) p.m2 /= walks;
  return mean;
}

MomentSeries classical_baseline(int steps) {
  if (steps < 0) throw std::invalid_argument("classical_baseline: negative step count");
  MomentSeries out;
  for (int t = 0; t <= steps; ++t) out.push_back({t, static_cast<double>(t)});
  return out;
}

const char* to_string(FitMethod m) {
  switch (m) {
    case FitMethod::NonlinearLeastSquares:
      return "nonlinear-least-squares";
    case FitMethod::LogLog:
      return "log-log";
  }
  return "?";
}

namespace {

// Residuals m2_k - c t_k^alpha over x = (c, alpha).
struct PowerLawResiduals : Eigen::DenseFunctor<double> {
  PowerLawResiduals(const Eigen::VectorXd& t, const Eigen::VectorXd& m2)
      : Eigen::DenseFunctor<double>(2, static_cast<int>(t.size())), t_(t), m2_(m2) {}

  int operator()(const InputType& x, ValueType& f) const {
    f = m2_ - x(0) * t_.array().pow(x(1)).matrix();
    return 0;
  }

  int df(const InputType& x, JacobianType& j) const {
    const Eigen::ArrayXd p = t_.array().pow(x(1));
    j.col(0) = -p.matrix();
    j.col(1) = (-x(0) * p * t_.array().log()).matrix();
    return 0;
  }

  Eigen::VectorXd t_, m2_;
};

}  // namespace

PowerLawFit fit_power_law(const MomentSeries& series, int t_min, int t_max, FitMethod method) {
  if (t_min < 1) throw std::invalid_argument("fit_power_law: t_min must be at least 1");
  std::vector<double> ts, ms;
  for (const auto& p : series) {
    if (p.t < t_min || (t_max >= 0 && p.t > t_max)) continue;
    if (!(p.m2 > 0.0)) {
      throw std::invalid_argument("fit_power_law: non-positive moment at t = " + std::to_string(p.t));
    }
    ts.push_back(p.t);
    ms.push_back(p.m2);
  }
  if (ts.size() < 3) throw std::invalid_argument("fit_power_law: need at least 3 points in the window");

  const Eigen::Map<const Eigen::VectorXd> t(ts.data(), static_cast<Eigen::Index>(ts.size()));
  const Eigen::Map<const Eigen::VectorXd> m2(ms.data(), static_cast<Eigen::Index>(ms.size()));
  const Eigen::VectorXd log_t = t.array().log().matrix();
  const Eigen::VectorXd log_m2 = m2.array().log().matrix();

  Eigen::MatrixXd design(log_t.size(), 2);
  design.col(0).setOnes();
  design.col(1) = log_t;
  const Eigen::Vector2d ols = design.colPivHouseholderQr().solve(log_m2);

  PowerLawFit fit;
  fit.prefactor = std::exp(ols(0));
  fit.exponent = ols(1);
  fit.method = method;

  if (method == FitMethod::NonlinearLeastSquares) {
    PowerLawResiduals functor(t, m2);
    Eigen::LevenbergMarquardt<PowerLawResiduals> lm(functor);
    lm.setXtol(1e-15);
    lm.setFtol(1e-15);
    lm.setMaxfev(2000);
    Eigen::VectorXd x(2);
    x << fit.prefactor, fit.exponent;
    lm.minimize(x);
    if (!x.allFinite() || x(0) <= 0.0) throw std::runtime_error("fit_power_law: nonlinear fit diverged");
    fit.prefactor = x(0);
    fit.exponent = x(1);
  }

  const Eigen::VectorXd model = (fit.exponent * log_t.array() + std::log(fit.prefactor)).matrix();
  fit.residual = std::sqrt((log_m2 - model).squaredNorm() / static_cast<double>(log_t.size()));
  fit.t_min = static_cast<int>(ts.front());
  fit.t_max = static_cast<int>(ts.back());
  fit.points = static_cast<int>(ts.size());
  return fit;
}

}  // namespace qwalk
