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

#include "qwalk/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "qwalk/sequence.hpp"

namespace qwalk {

std::vector<double> uniform_bin_edges(int bins, double lo, double hi) {
  if (bins < 1 || !(hi > lo)) throw std::invalid_argument("uniform_bin_edges: need bins >= 1 and hi > lo");
  std::vector<double> e(static_cast<std::size_t>(bins) + 1);
  for (int k = 0; k <= bins; ++k) e[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / bins;
  e.back() = hi;
  return e;
}

namespace {

constexpr std::uint64_t kChunk = 4096;
constexpr double kArgmaxTolerance = 1e-12;

struct Candidate {
  std::uint64_t bits = 0;
  double entropy = 0.0;
};

// Text order on packed sequences of equal length: the lowest differing bit is
// the earliest differing symbol, and F (0) sorts before H (1).
bool text_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t d = a ^ b;
  if (d == 0) return false;
  return ((a >> std::countr_zero(d)) & 1u) == 0;
}

long long entropy_key(double e) { return std::llround(e * 1e12); }

bool rank_before(const Candidate& a, const Candidate& b) {
  const auto ka = entropy_key(a.entropy), kb = entropy_key(b.entropy);
  if (ka != kb) return ka > kb;
  return text_less(a.bits, b.bits);
}

int find_bin(const std::vector<double>& edges, double e) {
  if (e < edges.front() || e > edges.back()) return -1;
  auto it = std::upper_bound(edges.begin(), edges.end(), e);
  int k = static_cast<int>(it - edges.begin()) - 1;
  return std::min(k, static_cast<int>(edges.size()) - 2);
}

struct Partial {
  std::uint64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  std::uint64_t above = 0;
  std::vector<std::uint64_t> bins;
  std::vector<Candidate> argmax;
  std::vector<Candidate> top;

  void add(std::uint64_t bits, double e, const SweepOptions& opt) {
    ++count;
    sum += e;
    sum_sq += e * e;
    min = std::min(min, e);
    if (e > opt.threshold) ++above;
    const int b = find_bin(opt.bin_edges, e);
    if (b >= 0) ++bins[static_cast<std::size_t>(b)];
    if (e > max) {
      max = e;
      std::erase_if(argmax, [&](const Candidate& c) { return c.entropy < max - kArgmaxTolerance; });
    }
    if (e >= max - kArgmaxTolerance) argmax.push_back({bits, e});
    top.push_back({bits, e});
    if (top.size() >= 2 * static_cast<std::size_t>(opt.keep_top) + 64) trim_top(opt);
  }

  void trim_top(const SweepOptions& opt) {
    const auto keep = std::min(top.size(), static_cast<std::size_t>(opt.keep_top));
    std::partial_sort(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(keep), top.end(), rank_before);
    top.resize(keep);
  }

  void merge(const Partial& o, const SweepOptions& opt) {
    count += o.count;
    sum += o.sum;
    sum_sq += o.sum_sq;
    min = std::min(min, o.min);
    above += o.above;
    for (std::size_t k = 0; k < bins.size(); ++k) bins[k] += o.bins[k];
    max = std::max(max, o.max);
    argmax.insert(argmax.end(), o.argmax.begin(), o.argmax.end());
    std::erase_if(argmax, [&](const Candidate& c) { return c.entropy < max - kArgmaxTolerance; });
    top.insert(top.end(), o.top.begin(), o.top.end());
    trim_top(opt);
  }
};

void validate_options(const SweepOptions& opt) {
  const auto& e = opt.bin_edges;
  if (e.size() < 2) throw std::invalid_argument("sweep: need at least two bin edges");
  for (std::size_t k = 1; k < e.size(); ++k) {
    if (!(e[k] > e[k - 1])) throw std::invalid_argument("sweep: bin edges must be strictly increasing");
  }
  if (e.front() > 0.0 || e.back() < 1.0) throw std::invalid_argument("sweep: bin edges must cover [0, 1]");
  if (opt.keep_top < 0) throw std::invalid_argument("sweep: keep_top must be non-negative");
}

int worker_count(const SweepOptions& opt, std::uint64_t chunks) {
  int w = opt.workers > 0 ? opt.workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(w), std::max<std::uint64_t>(chunks, 1)));
}

// Runs `fill(chunk_index, partial)` over every chunk on a small worker pool
// and merges the partials in chunk order.
Partial run_chunks(std::uint64_t chunks, const SweepOptions& opt,
                   const std::function<void(std::uint64_t, Partial&)>& fill) {
  std::vector<Partial> partials(chunks);
  for (auto& p : partials) p.bins.assign(opt.bin_edges.size() - 1, 0);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      fill(c, partials[c]);
      partials[c].trim_top(opt);
    }
  };
  const int workers = worker_count(opt, chunks);
  std::vector<std::jthread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();

  Partial total;
  total.bins.assign(opt.bin_edges.size() - 1, 0);
  for (const auto& p : partials) total.merge(p, opt);
  return total;
}

RankedSequence to_ranked(const Candidate& c, int n) { return {CoinSequence::from_bits(c.bits, n), c.entropy}; }

SweepReport finish(const Partial& total, const InitialCoin& init, int n, const SweepOptions& opt) {
  SweepReport r;
  r.n = n;
  r.init = init;
  r.count = total.count;
  const double cnt = static_cast<double>(total.count);
  r.mean_entropy = total.sum / cnt;
  r.std_entropy = std::sqrt(std::max(0.0, total.sum_sq / cnt - r.mean_entropy * r.mean_entropy));
  r.min_entropy = total.min;
  r.max_entropy = total.max;
  r.threshold = opt.threshold;
  r.count_above = total.above;
  r.fraction_above = static_cast<double>(total.above) / cnt;
  r.bin_edges = opt.bin_edges;
  r.bin_counts = total.bins;

  auto argmax = total.argmax;
  std::sort(argmax.begin(), argmax.end(), [](const Candidate& a, const Candidate& b) { return text_less(a.bits, b.bits); });
  for (const auto& c : argmax) r.argmax.push_back(to_ranked(c, n));
  for (const auto& c : total.top) r.top.push_back(to_ranked(c, n));
  return r;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<double> SweepReport::bin_rates() const {
  std::vector<double> rates;
  for (auto c : bin_counts) rates.push_back(count ? static_cast<double>(c) / static_cast<double>(count) : 0.0);
  return rates;
}

int SweepReport::bin_of(double entropy) const { return find_bin(bin_edges, entropy); }

SweepReport exhaustive_sweep(const InitialCoin& init, int n, const SweepOptions& options) {
  if (n < 1) throw std::invalid_argument("exhaustive_sweep: length must be at least 1");
  if (n > kMaxExhaustiveLength) {
    throw std::invalid_argument("exhaustive_sweep: length " + std::to_string(n) + " exceeds " +
                                std::to_string(kMaxExhaustiveLength) + " (2^n enumeration); use sampled_sweep instead");
  }
  init.validate();
  validate_options(options);
  const auto t0 = std::chrono::steady_clock::now();

  const std::uint64_t space = std::uint64_t{1} << n;
  const std::uint64_t chunks = (space + kChunk - 1) / kChunk;
  std::vector<double> all;
  if (options.lz_correlation) all.resize(space);

  const Partial total = run_chunks(chunks, options, [&](std::uint64_t c, Partial& p) {
    const std::uint64_t lo = c * kChunk, hi = std::min(space, lo + kChunk);
    for (std::uint64_t bits = lo; bits < hi; ++bits) {
      const double e = entropy_of_sequence(init, CoinSequence::from_bits(bits, n));
      p.add(bits, e, options);
      if (options.lz_correlation) all[bits] = e;
    }
  });

  SweepReport r = finish(total, init, n, options);
  r.exhaustive = true;
  if (options.lz_correlation && space >= 2) {
    std::vector<double> lz(space);
    for (std::uint64_t bits = 0; bits < space; ++bits) {
      lz[bits] = lz_complexity(CoinSequence::from_bits(bits, n));
    }
    r.lz_rank_correlation = spearman_correlation(lz, all);
  }
  r.wall_seconds = seconds_since(t0);
  return r;
}

SweepReport sampled_sweep(const InitialCoin& init, int n, std::uint64_t samples, std::uint64_t seed,
                          const SweepOptions& options) {
  if (n < 1 || n > 64) throw std::invalid_argument("sampled_sweep: length must be in [1, 64]");
  if (samples < 1) throw std::invalid_argument("sampled_sweep: need at least one sample");
  init.validate();
  validate_options(options);
  const auto t0 = std::chrono::steady_clock::now();

  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  const Partial total = run_chunks(chunks, options, [&](std::uint64_t c, Partial& p) {
    std::seed_seq sseq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(sseq);
    const std::uint64_t lo = c * kChunk, hi = std::min(samples, lo + kChunk);
    for (std::uint64_t k = lo; k < hi; ++k) {
      const std::uint64_t bits = rng() & mask;
      p.add(bits, entropy_of_sequence(init, CoinSequence::from_bits(bits, n)), options);
    }
  });

  SweepReport r = finish(total, init, n, options);
  r.exhaustive = false;
  r.samples = samples;
  r.seed = seed;
  r.standard_error = r.std_entropy / std::sqrt(static_cast<double>(r.count));
  r.wall_seconds = seconds_since(t0);
  return r;
}

std::vector<CoinSequence> best_sequences(const SweepReport& report, int k) {
  if (k < 0) throw std::invalid_argument("best_sequences: k must be non-negative");
  if (static_cast<std::uint64_t>(k) > report.count) {
    throw std::invalid_argument("best_sequences: k = " + std::to_string(k) + " exceeds the " +
                                std::to_string(report.count) + " evaluated sequences");
  }
  if (static_cast<std::size_t>(k) > report.top.size()) {
    throw std::invalid_argument("best_sequences: report retained only " + std::to_string(report.top.size()) +
                                " sequences; rerun the sweep with a larger keep_top");
  }
  std::vector<CoinSequence> out;
  for (int i = 0; i < k; ++i) out.push_back(report.top[static_cast<std::size_t>(i)].sequence);
  return out;
}

double interval_weighted_entropy(const SweepReport& report, const std::vector<double>& measured) {
  if (measured.empty()) throw std::invalid_argument("interval_weighted_entropy: no measurements");
  const auto rates = report.bin_rates();
  std::map<int, int> per_bin;
  std::vector<int> bin_index;
  for (double s : measured) {
    const int b = report.bin_of(s);
    if (b < 0) throw std::invalid_argument("interval_weighted_entropy: value outside the histogram range");
    ++per_bin[b];
    bin_index.push_back(b);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    const int b = bin_index[i];
    total += measured[i] * rates[static_cast<std::size_t>(b)] / per_bin[b];
  }
  return total;
}

}  // namespace qwalk
