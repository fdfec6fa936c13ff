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

// CSV and JSON exports. CSV headers are fixed; floats carry 12 significant digits.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwalk/entanglement.hpp"
#include "qwalk/sweep.hpp"
#include "qwalk/tomography.hpp"
#include "qwalk/transport.hpp"

namespace qwalk::io {

using nlohmann::json;

std::string format_double(double x);
/// x rounded to 12 significant digits, for JSON emission.
double round12(double x);

inline constexpr const char* kTrajectoryHeader = "t,j,re_a,im_a,re_b,im_b,probability";
inline constexpr const char* kDistributionHeader = "j,probability";
inline constexpr const char* kEntropyHeader = "t,entropy";
inline constexpr const char* kEntropyEigenHeader = "t,entropy,lambda_min,lambda_max";
inline constexpr const char* kMomentHeader = "t,m2";
inline constexpr const char* kCountsHeader = "j,basis,outcome,count";

/// One row per (t, j), ascending j, no probability threshold.
void write_trajectory_csv(std::ostream& os, const std::vector<WalkState>& trajectory);
json trajectory_json(const std::vector<WalkState>& trajectory);

void write_distribution_csv(std::ostream& os, const PositionDistribution& d);
json distribution_json(const PositionDistribution& d);

void write_entropy_csv(std::ostream& os, const std::vector<EntropyPoint>& curve, bool eigenvalues = false);
json entropy_json(const std::vector<EntropyPoint>& curve);

void write_moment_csv(std::ostream& os, const MomentSeries& series);
json moment_json(const MomentSeries& series);
/// Reads a "t,m2" table (header required).
MomentSeries read_moment_csv(std::istream& is);

json fit_json(const PowerLawFit& fit);
json init_json(const InitialCoin& init);
json sweep_json(const SweepReport& report);

void write_counts_csv(std::ostream& os, const ProjectionCounts& counts);
json tomography_json(const TomographyResult& result);

struct FixtureEntry {
  CoinSequence sequence;
  std::optional<int> expected_lz;
};

/// One sequence per line in text form, optionally followed by whitespace and an
/// expected LZ complexity. Blank lines and lines starting with '#' are skipped.
std::vector<FixtureEntry> read_sequence_fixture(std::istream& is);

}  // namespace qwalk::io
