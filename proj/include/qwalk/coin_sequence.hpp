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

// Finite coin sequences over the two-letter alphabet {H, F}.
//
// Text form is canonical for I/O: the first character is the coin applied
// at step 1. The packed form stores H as bit 1 and F as bit 0 with the
// first-applied coin in the least significant bit.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

enum class Symbol : std::uint8_t { F = 0, H = 1 };

class CoinSequence {
 public:
  CoinSequence() = default;
  explicit CoinSequence(std::vector<Symbol> symbols);

  /// Unpacks the low `length` bits of `bits` (length <= 64).
  static CoinSequence from_bits(std::uint64_t bits, int length);
  static CoinSequence uniform(Symbol s, int length);

  int size() const { return static_cast<int>(symbols_.size()); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](int k) const { return symbols_[static_cast<std::size_t>(k)]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  std::uint64_t to_bits() const;
  std::string text() const;
  /// 0-1 form with H -> '1', F -> '0'.
  std::string binary() const;

  CoinSequence prefix(int length) const;

  friend bool operator==(const CoinSequence&, const CoinSequence&) = default;

 private:
  std::vector<Symbol> symbols_;
};

/// Parses a nonempty string over {H, F}, case-insensitive.
/// Throws SequenceParseError naming the offending index.
CoinSequence parse_sequence(std::string_view text);

class SequenceParseError : public std::invalid_argument {
 public:
  SequenceParseError(const std::string& what, std::size_t index)
      : std::invalid_argument(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

char symbol_char(Symbol s);
Coin symbol_coin(Symbol s);

/// The experiment's 20-step enhancing sequence.
inline constexpr std::string_view kEnhancingSequence = "FFHFHFHHFFFFFHFHHHHH";

}  // namespace qwalk
