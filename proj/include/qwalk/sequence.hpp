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

// Lempel-Ziv complexity and per-sequence entanglement.

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/coin_sequence.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

/// All nonempty substrings of `s`.
std::set<std::string> vocabulary(std::string_view s);

/// Left-to-right Lempel-Ziv parse of the 0-1 form of a sequence.
///
/// Starting from the single symbol s(1), the current word s(i..j) keeps
/// growing while it occurs somewhere in the prefix s(1..j-1); the first
/// time it does not, a word boundary is placed after s(j) and the next word
/// starts at s(j+1). A word still open when the input ends counts as a word.
std::vector<std::string> lz_parse(std::string_view binary);
std::vector<std::string> lz_parse(const CoinSequence& seq);

int lz_complexity(std::string_view binary);
int lz_complexity(const CoinSequence& seq);

/// S_E of the final state of the walk driven by `seq` (one coin per step).
double entropy_of_sequence(const InitialCoin& init, const CoinSequence& seq);

/// Spearman rank correlation with average ranks for ties.
double spearman_correlation(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qwalk
