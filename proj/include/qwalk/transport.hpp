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

// Position distributions, second moments and power-law transport fits.

#include <cstdint>
#include <map>
#include <vector>

#include "qwalk/walk.hpp"

namespace qwalk {

/// Site -> probability, ascending site order.
struct PositionDistribution {
  std::map<int, double> probabilities;

  double total() const;
  void validate(double tol = 1e-10) const;
};

struct MomentPoint {
  int t = 0;
  double m2 = 0.0;
};
using MomentSeries = std::vector<MomentPoint>;

enum class FitMethod {
  /// Unweighted least squares on m2 = c t^alpha in linear space, seeded from LogLog.
  NonlinearLeastSquares,
  /// Ordinary least squares of log m2 on log t.
  LogLog,
};

struct PowerLawFit {
  double prefactor = 0.0;
  double exponent = 0.0;
  /// RMS of log m2 - log(c t^alpha) over the window.
  double residual = 0.0;
  int t_min = 0;
  int t_max = 0;
  int points = 0;
  FitMethod method = FitMethod::NonlinearLeastSquares;
};

PositionDistribution position_distribution(const WalkState& state);

/// sum_j p_j j^2 about the launch site.
double second_moment(const PositionDistribution& dist);

MomentSeries moment_series(const std::vector<WalkState>& trajectory);
MomentSeries moment_series(const InitialCoin& init, const CoinPolicy& policy, int steps);

/// Mean m2(t) over `walks` DynamicRandom walks with seeds base_seed, base_seed+1, ...
MomentSeries ensemble_moment_series(const InitialCoin& init, const CoinAlphabet& alphabet, int steps,
                                    int walks, std::uint64_t base_seed);

/// Unbiased classical random walk: m2(t) = t for t = 0..steps.
MomentSeries classical_baseline(int steps);

/// Fits m2 = c t^alpha over points with t_min <= t <= t_max (t_max < 0: no upper bound).
PowerLawFit fit_power_law(const MomentSeries& series, int t_min, int t_max = -1,
                          FitMethod method = FitMethod::NonlinearLeastSquares);

const char* to_string(FitMethod m);

}  // namespace qwalk
