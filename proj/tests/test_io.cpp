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

#include "qwalk/io.hpp"

#include <sstream>

#include "gtest/gtest.h"

using namespace qwalk;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(io, format_twelve_digits) {
  EXPECT_EQ(io::format_double(0.1234567890123456), "0.123456789012");
  EXPECT_EQ(io::format_double(1.0), "1");
  EXPECT_EQ(io::format_double(-2.5e-20), "-2.5e-20");
  EXPECT_EQ(io::round12(1.0 / 3.0), 0.333333333333);
}

TEST(io, trajectory_csv_rows) {
  const auto traj = evolve({0.0, 0.0}, Ordered{hadamard_coin()}, 1);
  std::ostringstream os;
  io::write_trajectory_csv(os, traj);
  const auto l = lines(os.str());
  ASSERT_EQ(l.size(), 1u + 1u + 3u);
  EXPECT_EQ(l[0], io::kTrajectoryHeader);
  EXPECT_EQ(l[1], "0,0,1,0,0,0,1");
  EXPECT_EQ(l[2], "1,-1,0,0,0.707106781187,0,0.5");
  EXPECT_EQ(l[3], "1,0,0,0,0,0,0");
  EXPECT_EQ(l[4], "1,1,0.707106781187,0,0,0,0.5");
  EXPECT_EQ(io::trajectory_json(traj).size(), 4u);
}

TEST(io, entropy_csv_with_eigenvalues) {
  const auto curve = entropy_curve({0.0, 0.0}, Ordered{hadamard_coin()}, 1);
  std::ostringstream os;
  io::write_entropy_csv(os, curve, true);
  const auto l = lines(os.str());
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], io::kEntropyEigenHeader);
  EXPECT_EQ(l[2], "1,1,0.5,0.5");
  EXPECT_EQ(io::entropy_json(curve)[1]["entropy"], 1.0);
}

TEST(io, moment_csv_round_trip) {
  const auto series = moment_series({51.0, 0.0}, Ordered{hadamard_coin()}, 20);
  std::stringstream ss;
  io::write_moment_csv(ss, series);
  const auto back = io::read_moment_csv(ss);
  ASSERT_EQ(back.size(), series.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    EXPECT_EQ(back[k].t, series[k].t);
    EXPECT_NEAR(back[k].m2, series[k].m2, 1e-10 * std::max(1.0, series[k].m2));
  }
}

TEST(io, moment_csv_errors) {
  std::istringstream no_header("1,2\n");
  EXPECT_THROW(io::read_moment_csv(no_header), std::runtime_error);
  std::istringstream bad_row("t,m2\n1,2\n2;3\n");
  EXPECT_THROW(io::read_moment_csv(bad_row), std::runtime_error);
  std::istringstream junk("t,m2\n1,2x\n");
  EXPECT_THROW(io::read_moment_csv(junk), std::runtime_error);
  std::istringstream empty("");
  EXPECT_THROW(io::read_moment_csv(empty), std::runtime_error);
}

TEST(io, counts_csv_layout) {
  const auto s = step(WalkState::localized(Spinor(1.0, 0.0)), hadamard_coin());
  std::ostringstream os;
  io::write_counts_csv(os, simulate_counts(s, 6, 0, true));
  const auto l = lines(os.str());
  ASSERT_EQ(l.size(), 1u + 12u);
  EXPECT_EQ(l[0], io::kCountsHeader);
  EXPECT_EQ(l[1], "-1,Z,H,0");
  EXPECT_EQ(l[2], "-1,Z,V,1");
  EXPECT_EQ(l[7], "1,Z,H,1");
}

TEST(io, fit_and_sweep_json_fields) {
  const auto fit = fit_power_law(classical_baseline(10), 1);
  const auto f = io::fit_json(fit);
  EXPECT_EQ(f["method"], "nonlinear-least-squares");
  EXPECT_EQ(f["window"][1], 10);

  const auto r = exhaustive_sweep({51.0, 0.0}, 4);
  const auto j = io::sweep_json(r);
  EXPECT_EQ(j["count"], 16);
  EXPECT_EQ(j["bins"]["counts"].size(), 12u);
  EXPECT_FALSE(j.contains("seed"));
  EXPECT_EQ(j["init"]["theta_deg"], 51.0);
}

TEST(io, tomography_json_summary) {
  const auto s = final_state({51.0, 0.0}, Ordered{hadamard_coin()}, 4);
  const auto j = io::tomography_json(tomographic_entropy(s, 3000, 2));
  EXPECT_EQ(j["summary"]["seed"], 2);
  EXPECT_EQ(j["summary"]["rho_c"].size(), 4u);
  EXPECT_GT(j["sites"].size(), 0u);
}

TEST(io, fixture_reader) {
  std::istringstream is("# comment\n\nHFH 3\nFF\n");
  const auto e = io::read_sequence_fixture(is);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0].sequence.text(), "HFH");
  EXPECT_EQ(*e[0].expected_lz, 3);
  EXPECT_FALSE(e[1].expected_lz.has_value());
  std::istringstream bad("HXF 2\n");
  EXPECT_THROW(io::read_sequence_fixture(bad), SequenceParseError);
}
