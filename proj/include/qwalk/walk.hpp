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

// Discrete-time quantum walk on the integer line.
//
// A walk state after t steps holds the spinor (a(j), b(j)) for every site
// j in [-t, t]; column j + t of the 2 x (2t+1) amplitude matrix is site j.
// One step applies the coin sitewise and then the conditional shift
// (|up> moves to j+1, |down> moves to j-1). An n-step walk is exactly n
// applications of that step.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/coin_sequence.hpp"

namespace qwalk {

template <typename Scalar>
class BasicWalkState {
 public:
  using Amplitudes = Eigen::Matrix<Complex<Scalar>, 2, Eigen::Dynamic>;

  BasicWalkState() : amps_(Amplitudes::Zero(2, 1)) { amps_(0, 0) = Scalar(1); }

  /// Takes ownership of a 2 x (2 steps + 1) amplitude block.
  BasicWalkState(int steps, Amplitudes amps) : t_(steps), amps_(std::move(amps)) {
    if (steps < 0 || amps_.cols() != 2 * steps + 1) {
      throw std::invalid_argument("WalkState: amplitude block must have 2t+1 columns");
    }
  }

  static BasicWalkState localized(const Spinor2<Scalar>& coin) {
    Amplitudes amps(2, 1);
    amps.col(0) = coin;
    return BasicWalkState(0, std::move(amps));
  }

  int steps() const { return t_; }
  int min_site() const { return -t_; }
  int max_site() const { return t_; }
  int num_sites() const { return 2 * t_ + 1; }
  bool in_support(int j) const { return j >= -t_ && j <= t_; }

  const Amplitudes& amplitudes() const { return amps_; }

  Spinor2<Scalar> spinor(int j) const {
    if (!in_support(j)) return Spinor2<Scalar>::Zero();
    return amps_.col(j + t_);
  }
  Complex<Scalar> a(int j) const { return in_support(j) ? amps_(0, j + t_) : Complex<Scalar>(0); }
  Complex<Scalar> b(int j) const { return in_support(j) ? amps_(1, j + t_) : Complex<Scalar>(0); }

  Scalar probability(int j) const { return in_support(j) ? amps_.col(j + t_).squaredNorm() : Scalar(0); }
  Scalar norm_squared() const { return amps_.squaredNorm(); }

 private:
  int t_ = 0;
  Amplitudes amps_;
};

using WalkState = BasicWalkState<double>;

/// Conditional displacement S: a(j) -> j+1, b(j) -> j-1. Advances t by one.
template <typename Scalar>
BasicWalkState<Scalar> shift(const BasicWalkState<Scalar>& state) {
  using Amps = typename BasicWalkState<Scalar>::Amplitudes;
  const Eigen::Index n = state.num_sites();
  Amps out = Amps::Zero(2, n + 2);
  out.row(0).segment(2, n) = state.amplitudes().row(0);
  out.row(1).segment(0, n) = state.amplitudes().row(1);
  return BasicWalkState<Scalar>(state.steps() + 1, std::move(out));
}

/// One walk step U = S (C x I) with a site-independent coin.
template <typename Scalar>
BasicWalkState<Scalar> step(const BasicWalkState<Scalar>& state, const Coin2<Scalar>& coin) {
  require_unitary(coin, "step");
  using Amps = typename BasicWalkState<Scalar>::Amplitudes;
  Amps tossed = coin * state.amplitudes();
  return shift(BasicWalkState<Scalar>(state.steps(), std::move(tossed)));
}

/// One walk step with a site-dependent coin; `coin_at(j)` must return a
/// unitary for every j in the current support.
template <typename Scalar, typename SiteCoin>
BasicWalkState<Scalar> step_sitewise(const BasicWalkState<Scalar>& state, SiteCoin&& coin_at) {
  using Amps = typename BasicWalkState<Scalar>::Amplitudes;
  Amps tossed(2, state.num_sites());
  for (int j = state.min_site(); j <= state.max_site(); ++j) {
    const Coin2<Scalar>& c = coin_at(j);
    tossed.col(j + state.steps()) = c * state.amplitudes().col(j + state.steps());
  }
  return shift(BasicWalkState<Scalar>(state.steps(), std::move(tossed)));
}

/// Initial coin parameters in degrees: cos(theta/2)|up> + e^{i phi} sin(theta/2)|down>.
struct InitialCoin {
  double theta_deg = 0.0;
  double phi_deg = 0.0;

  void validate() const;
  Spinor spinor() const;
};

WalkState initial_state(const InitialCoin& init);

using CoinAlphabet = std::array<Coin, 2>;

/// {F, H}, indexed by the packed-sequence bit.
CoinAlphabet default_alphabet();

struct Ordered {
  Coin coin;
};
struct DynamicSequence {
  CoinSequence sequence;
};
struct DynamicRandom {
  CoinAlphabet alphabet;
  std::uint64_t seed = 0;
};
/// One coin per site over [-steps, steps], drawn once before the walk.
struct StaticRandom {
  CoinAlphabet alphabet;
  std::uint64_t seed = 0;
};
/// Coin at (t, j) is alphabet[site_bit(j) xor step_bit(t)].
struct StaticAndDynamic {
  CoinAlphabet alphabet;
  std::uint64_t static_seed = 0;
  std::uint64_t dynamic_seed = 0;
};

using CoinPolicy = std::variant<Ordered, DynamicSequence, DynamicRandom, StaticRandom, StaticAndDynamic>;

/// `count` i.i.d. uniform bits from a mt19937_64 stream (top bit of each draw).
std::vector<std::uint8_t> random_bits(std::uint64_t seed, int count);

/// The coin applied at every (step, site) of an n-step walk under a policy.
class CoinSchedule {
 public:
  CoinSchedule(const CoinPolicy& policy, int steps);

  int steps() const { return steps_; }
  bool site_dependent() const { return site_dependent_; }

  /// Coin used during step `t` (0-based) at site j.
  const Coin& coin(int t, int j) const;

 private:
  int steps_;
  bool site_dependent_ = false;
  std::vector<Coin> step_coins_;
  CoinAlphabet alphabet_{};
  std::vector<std::uint8_t> site_bits_;
  std::vector<std::uint8_t> step_bits_;
};

/// Applies step `t` of the schedule.
WalkState advance(const WalkState& state, const CoinSchedule& schedule, int t);

/// Full trajectory, element k is the state after k steps (k = 0..steps).
std::vector<WalkState> evolve(const InitialCoin& init, const CoinPolicy& policy, int steps);

/// Streams each state (t = 0..steps) to `visit` without keeping the trajectory.
void evolve_visit(const InitialCoin& init, const CoinPolicy& policy, int steps,
                  const std::function<void(const WalkState&)>& visit);

WalkState final_state(const InitialCoin& init, const CoinPolicy& policy, int steps);

struct InvariantReport {
  double norm_error = 0.0;
  double parity_leak = 0.0;  // max |amplitude| on sites with j != t (mod 2)
};

InvariantReport check_invariants(const WalkState& state);

}  // namespace qwalk
