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

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qwalk::io {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) { return std::strtod(format_double(x).c_str(), nullptr); }

void write_trajectory_csv(std::ostream& os, const std::vector<WalkState>& trajectory) {
  os << kTrajectoryHeader << '\n';
  for (const auto& s : trajectory) {
    for (int j = s.min_site(); j <= s.max_site(); ++j) {
      const auto a = s.a(j), b = s.b(j);
      os << s.steps() << ',' << j << ',' << format_double(a.real()) << ',' << format_double(a.imag()) << ','
         << format_double(b.real()) << ',' << format_double(b.imag()) << ',' << format_double(s.probability(j))
         << '\n';
    }
  }
}

json trajectory_json(const std::vector<WalkState>& trajectory) {
  json rows = json::array();
  for (const auto& s : trajectory) {
    for (int j = s.min_site(); j <= s.max_site(); ++j) {
      const auto a = s.a(j), b = s.b(j);
      rows.push_back({{"t", s.steps()},
                      {"j", j},
                      {"re_a", round12(a.real())},
                      {"im_a", round12(a.imag())},
                      {"re_b", round12(b.real())},
                      {"im_b", round12(b.imag())},
                      {"probability", round12(s.probability(j))}});
    }
  }
  return rows;
}

void write_distribution_csv(std::ostream& os, const PositionDistribution& d) {
  os << kDistributionHeader << '\n';
  for (const auto& [j, p] : d.probabilities) os << j << ',' << format_double(p) << '\n';
}

json distribution_json(const PositionDistribution& d) {
  json rows = json::array();
  for (const auto& [j, p] : d.probabilities) rows.push_back({{"j", j}, {"probability", round12(p)}});
  return rows;
}

void write_entropy_csv(std::ostream& os, const std::vector<EntropyPoint>& curve, bool eigenvalues) {
  os << (eigenvalues ? kEntropyEigenHeader : kEntropyHeader) << '\n';
  for (const auto& p : curve) {
    os << p.t << ',' << format_double(p.entropy);
    if (eigenvalues) os << ',' << format_double(p.eigenvalues[0]) << ',' << format_double(p.eigenvalues[1]);
    os << '\n';
  }
}

json entropy_json(const std::vector<EntropyPoint>& curve) {
  json rows = json::array();
  for (const auto& p : curve) {
    rows.push_back({{"t", p.t},
                    {"entropy", round12(p.entropy)},
                    {"lambda_min", round12(p.eigenvalues[0])},
                    {"lambda_max", round12(p.eigenvalues[1])}});
  }
  return rows;
}

void write_moment_csv(std::ostream& os, const MomentSeries& series) {
  os << kMomentHeader << '\n';
  for (const auto& p : series) os << p.t << ',' << format_double(p.m2) << '\n';
}

json moment_json(const MomentSeries& series) {
  json rows = json::array();
  for (const auto& p : series) rows.push_back({{"t", p.t}, {"m2", round12(p.m2)}});
  return rows;
}

MomentSeries read_moment_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("moment series: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kMomentHeader) throw std::runtime_error("moment series: expected header '" + std::string(kMomentHeader) + "'");
  MomentSeries out;
  int row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("moment series: malformed row " + std::to_string(row));
    try {
      std::size_t used = 0;
      const int t = std::stoi(line.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("t");
      const std::string rest = line.substr(comma + 1);
      const double m2 = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("m2");
      out.push_back({t, m2});
    } catch (const std::logic_error&) {
      throw std::runtime_error("moment series: malformed row " + std::to_string(row));
    }
  }
  return out;
}

json fit_json(const PowerLawFit& fit) {
  return {{"prefactor", round12(fit.prefactor)},
          {"exponent", round12(fit.exponent)},
          {"residual", round12(fit.residual)},
          {"window", {fit.t_min, fit.t_max}},
          {"points", fit.points},
          {"method", to_string(fit.method)}};
}

json init_json(const InitialCoin& init) { return {{"theta_deg", init.theta_deg}, {"phi_deg", init.phi_deg}}; }

json sweep_json(const SweepReport& r) {
  auto ranked = [](const std::vector<RankedSequence>& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back({{"sequence", s.sequence.text()}, {"entropy", round12(s.entropy)}});
    return a;
  };
  json edges = json::array();
  for (double e : r.bin_edges) edges.push_back(round12(e));
  json j = {{"n", r.n},
            {"init", init_json(r.init)},
            {"exhaustive", r.exhaustive},
            {"count", r.count},
            {"mean", round12(r.mean_entropy)},
            {"std", round12(r.std_entropy)},
            {"min", round12(r.min_entropy)},
            {"max", round12(r.max_entropy)},
            {"threshold", r.threshold},
            {"count_above", r.count_above},
            {"fraction_above", round12(r.fraction_above)},
            {"bins", {{"edges", edges}, {"counts", r.bin_counts}}},
            {"argmax", ranked(r.argmax)},
            {"top", ranked(r.top)}};
  if (!r.exhaustive) {
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["standard_error"] = round12(r.standard_error);
  }
  if (r.lz_rank_correlation) j["lz_rank_correlation"] = round12(*r.lz_rank_correlation);
  return j;
}

void write_counts_csv(std::ostream& os, const ProjectionCounts& counts) {
  os << kCountsHeader << '\n';
  for (const auto& [j, n] : counts.sites) {
    for (Outcome o : kOutcomes) {
      os << j << ',' << basis_name(o) << ',' << outcome_name(o) << ',' << format_double(n[static_cast<std::size_t>(o)])
         << '\n';
    }
  }
}

json tomography_json(const TomographyResult& r) {
  auto matrix = [](const DensityMatrix2& rho) {
    json m = json::array();
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) m.push_back({round12(rho(a, b).real()), round12(rho(a, b).imag())});
    }
    return m;
  };
  json sites = json::array();
  for (const auto& s : r.sites) {
    sites.push_back({{"j", s.site},
                     {"probability", round12(s.probability)},
                     {"rho", matrix(s.rho)},
                     {"fidelity", round12(s.fidelity)}});
  }
  return {{"sites", sites},
          {"summary",
           {{"entropy", round12(r.entropy)},
            {"exact_entropy", round12(r.exact_entropy)},
            {"fidelity", round12(r.fidelity)},
            {"similarity", round12(r.similarity)},
            {"rho_c", matrix(r.rho_c)},
            {"seed", r.seed},
            {"total_counts", r.total_counts},
            {"noiseless", r.noiseless}}}};
}

std::vector<FixtureEntry> read_sequence_fixture(std::istream& is) {
  std::vector<FixtureEntry> out;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string text;
    if (!(ls >> text) || text.front() == '#') continue;
    FixtureEntry e{parse_sequence(text), std::nullopt};
    int expected = 0;
    if (ls >> expected) e.expected_lz = expected;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace qwalk::io
