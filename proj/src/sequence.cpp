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

#include "qwalk/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "qwalk/entanglement.hpp"

namespace qwalk {

CoinSequence::CoinSequence(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

CoinSequence CoinSequence::from_bits(std::uint64_t bits, int length) {
  if (length < 0 || length > 64) throw std::invalid_argument("CoinSequence: packed length must be in [0, 64]");
  std::vector<Symbol> s(static_cast<std::size_t>(length));
  for (int k = 0; k < length; ++k) s[static_cast<std::size_t>(k)] = ((bits >> k) & 1u) ? Symbol::H : Symbol::F;
  return CoinSequence(std::move(s));
}

CoinSequence CoinSequence::uniform(Symbol s, int length) {
  return CoinSequence(std::vector<Symbol>(static_cast<std::size_t>(length), s));
}

std::uint64_t CoinSequence::to_bits() const {
  if (size() > 64) throw std::length_error("CoinSequence: too long to pack into 64 bits");
  std::uint64_t bits = 0;
  for (int k = 0; k < size(); ++k) {
    if ((*this)[k] == Symbol::H) bits |= std::uint64_t{1} << k;
  }
  return bits;
}

std::string CoinSequence::text() const {
  std::string s;
  s.reserve(symbols_.size());
  for (Symbol x : symbols_) s.push_back(symbol_char(x));
  return s;
}

std::string CoinSequence::binary() const {
  std::string s;
  s.reserve(symbols_.size());
  for (Symbol x : symbols_) s.push_back(x == Symbol::H ? '1' : '0');
  return s;
}

CoinSequence CoinSequence::prefix(int length) const {
  if (length < 0 || length > size()) throw std::out_of_range("CoinSequence: prefix length out of range");
  return CoinSequence(std::vector<Symbol>(symbols_.begin(), symbols_.begin() + length));
}

char symbol_char(Symbol s) { return s == Symbol::H ? 'H' : 'F'; }

Coin symbol_coin(Symbol s) { return s == Symbol::H ? hadamard_coin() : fourier_coin(); }

CoinSequence parse_sequence(std::string_view text) {
  if (text.empty()) throw SequenceParseError("coin sequence: empty", 0);
  std::vector<Symbol> s;
  s.reserve(text.size());
  for (std::size_t k = 0; k < text.size(); ++k) {
    switch (std::toupper(static_cast<unsigned char>(text[k]))) {
      case 'H':
        s.push_back(Symbol::H);
        break;
      case 'F':
        s.push_back(Symbol::F);
        break;
      default:
        throw SequenceParseError("coin sequence: illegal character '" + std::string(1, text[k]) + "' at index " +
                                     std::to_string(k),
                                 k);
    }
  }
  return CoinSequence(std::move(s));
}

std::set<std::string> vocabulary(std::string_view s) {
  std::set<std::string> v;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t len = 1; i + len <= s.size(); ++len) v.emplace(s.substr(i, len));
  }
  return v;
}

std::vector<std::string> lz_parse(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("lz_parse: empty sequence");
  const std::size_t n = s.size();
  std::vector<std::string> words;
  std::size_t i = 0;  // first symbol of the current word (0-based)
  while (i < n) {
    std::size_t j = i;  // last symbol of the current word
    // s(i..j) in V(s(0..j-1)): grow the word by one symbol.
    while (j < n && s.substr(0, j).find(s.substr(i, j - i + 1)) != std::string_view::npos) ++j;
    const std::size_t end = std::min(j, n - 1);
    words.emplace_back(s.substr(i, end - i + 1));
    i = end + 1;
  }
  return words;
}

std::vector<std::string> lz_parse(const CoinSequence& seq) { return lz_parse(seq.binary()); }

int lz_complexity(std::string_view binary) { return static_cast<int>(lz_parse(binary).size()); }

int lz_complexity(const CoinSequence& seq) { return lz_complexity(seq.binary()); }

double entropy_of_sequence(const InitialCoin& init, const CoinSequence& seq) {
  if (seq.empty()) throw std::invalid_argument("entropy_of_sequence: empty sequence");
  const WalkState s = final_state(init, DynamicSequence{seq}, seq.size());
  return von_neumann_entropy(reduced_coin_density(s));
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t k = 0; k < order.size();) {
    std::size_t m = k;
    while (m + 1 < order.size() && v[order[m + 1]] == v[order[k]]) ++m;
    const double r = 0.5 * static_cast<double>(k + m) + 1.0;
    for (std::size_t q = k; q <= m; ++q) ranks[order[q]] = r;
    k = m + 1;
  }
  return ranks;
}

}  // namespace

double spearman_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("spearman: need two equal-length samples");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < rx.size(); ++k) {
    sxy += (rx[k] - mx) * (ry[k] - my);
    sxx += (rx[k] - mx) * (rx[k] - mx);
    syy += (ry[k] - my) * (ry[k] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace qwalk
