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

// Entropy statistics over coin-sequence space.
//
// The exhaustive sweep enumerates every packed sequence 0 .. 2^n - 1. The
// index space is cut into fixed contiguous chunks whose partial statistics
// are merged in chunk order, so reports do not depend on the worker count.

#include <cstdint>
#include <optional>
#include <vector>

#include "qwalk/coin_sequence.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

inline constexpr int kMaxExhaustiveLength = 24;

std::vector<double> uniform_bin_edges(int bins, double lo = 0.0, double hi = 1.0);

struct RankedSequence {
  CoinSequence sequence;
  double entropy = 0.0;
};

struct SweepOptions {
  std::vector<double> bin_edges = uniform_bin_edges(12);
  double threshold = 0.9;
  /// 0 selects std::thread::hardware_concurrency().
  int workers = 0;
  /// Number of best sequences retained for best_sequences().
  int keep_top = 64;
  /// Also compute the Spearman correlation between LZ complexity and entropy (exhaustive only).
  bool lz_correlation = false;
};

struct SweepReport {
  int n = 0;
  InitialCoin init;
  bool exhaustive = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  std::uint64_t count = 0;
  double mean_entropy = 0.0;
  double std_entropy = 0.0;
  /// Standard error of the mean (sampled sweeps; 0 for exhaustive).
  double standard_error = 0.0;
  double min_entropy = 0.0;
  double max_entropy = 0.0;

  double threshold = 0.9;
  std::uint64_t count_above = 0;
  double fraction_above = 0.0;

  std::vector<double> bin_edges;
  std::vector<std::uint64_t> bin_counts;

  /// Sequences within 1e-12 of max_entropy, sorted by text.
  std::vector<RankedSequence> argmax;
  /// Best sequences by entropy (descending), ties by text ('F' < 'H').
  std::vector<RankedSequence> top;

  std::optional<double> lz_rank_correlation;
  double wall_seconds = 0.0;

  /// Fraction of sequences in each bin.
  std::vector<double> bin_rates() const;
  int bin_of(double entropy) const;
};

SweepReport exhaustive_sweep(const InitialCoin& init, int n, const SweepOptions& options = {});

/// `samples` i.i.d. uniform sequences of length n <= 64, reproducible from `seed`.
SweepReport sampled_sweep(const InitialCoin& init, int n, std::uint64_t samples, std::uint64_t seed,
                          const SweepOptions& options = {});

/// The k highest-entropy sequences, ties broken by text order.
std::vector<CoinSequence> best_sequences(const SweepReport& report, int k);

/// Interval-weighted mean sum_i S_i P(bin_i) / m(bin_i), where m(bin) counts the
/// measured values falling in that bin.
double interval_weighted_entropy(const SweepReport& report, const std::vector<double>& measured);

}  // namespace qwalk
