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

#include "qwalk/walk.hpp"

#include <numbers>
#include <random>
#include <string>

namespace qwalk {
namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_alphabet(const CoinAlphabet& alphabet) {
  require_unitary(alphabet[0], "coin alphabet");
  require_unitary(alphabet[1], "coin alphabet");
}

}  // namespace

void InitialCoin::validate() const {
  if (!std::isfinite(theta_deg) || theta_deg < 0.0 || theta_deg > 180.0) {
    throw std::invalid_argument("initial coin: theta must lie in [0, 180] degrees, got " +
                                std::to_string(theta_deg));
  }
  if (!std::isfinite(phi_deg) || phi_deg < 0.0 || phi_deg >= 360.0) {
    throw std::invalid_argument("initial coin: phi must lie in [0, 360) degrees, got " +
                                std::to_string(phi_deg));
  }
}

Spinor InitialCoin::spinor() const {
  validate();
  const double half = 0.5 * theta_deg * kDegree;
  Spinor s;
  s(0) = std::cos(half);
  s(1) = std::polar(std::sin(half), phi_deg * kDegree);
  return s;
}

WalkState initial_state(const InitialCoin& init) { return WalkState::localized(init.spinor()); }

CoinAlphabet default_alphabet() { return {fourier_coin(), hadamard_coin()}; }

std::vector<std::uint8_t> random_bits(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(count));
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);
  return bits;
}

CoinSchedule::CoinSchedule(const CoinPolicy& policy, int steps) : steps_(steps) {
  if (steps < 1) throw std::invalid_argument("walk: step count must be at least 1");
  std::visit(
      Overloaded{
          [&](const Ordered& p) {
            require_unitary(p.coin, "ordered coin");
            step_coins_.assign(static_cast<std::size_t>(steps), p.coin);
          },
          [&](const DynamicSequence& p) {
            if (p.sequence.size() != steps) {
              throw std::invalid_argument("walk: sequence length " + std::to_string(p.sequence.size()) +
                                          " does not match step count " + std::to_string(steps));
            }
            step_coins_.reserve(static_cast<std::size_t>(steps));
            for (Symbol s : p.sequence.symbols()) step_coins_.push_back(symbol_coin(s));
          },
          [&](const DynamicRandom& p) {
            require_alphabet(p.alphabet);
            for (auto bit : random_bits(p.seed, steps)) step_coins_.push_back(p.alphabet[bit]);
          },
          [&](const StaticRandom& p) {
            require_alphabet(p.alphabet);
            site_dependent_ = true;
            alphabet_ = p.alphabet;
            site_bits_ = random_bits(p.seed, 2 * steps + 1);
            step_bits_.assign(static_cast<std::size_t>(steps), 0);
          },
          [&](const StaticAndDynamic& p) {
            require_alphabet(p.alphabet);
            site_dependent_ = true;
            alphabet_ = p.alphabet;
            site_bits_ = random_bits(p.static_seed, 2 * steps + 1);
            step_bits_ = random_bits(p.dynamic_seed, steps);
          },
      },
      policy);
}

const Coin& CoinSchedule::coin(int t, int j) const {
  if (t < 0 || t >= steps_) throw std::out_of_range("coin schedule: step out of range");
  if (!site_dependent_) return step_coins_[static_cast<std::size_t>(t)];
  if (j < -steps_ || j > steps_) throw std::out_of_range("coin schedule: site out of range");
  const auto bit = site_bits_[static_cast<std::size_t>(j + steps_)] ^ step_bits_[static_cast<std::size_t>(t)];
  return alphabet_[bit];
}

WalkState advance(const WalkState& state, const CoinSchedule& schedule, int t) {
  if (!schedule.site_dependent()) return step(state, schedule.coin(t, 0));
  return step_sitewise(state, [&](int j) -> const Coin& { return schedule.coin(t, j); });
}

void evolve_visit(const InitialCoin& init, const CoinPolicy& policy, int steps,
                  const std::function<void(const WalkState&)>& visit) {
  const CoinSchedule schedule(policy, steps);
  WalkState state = initial_state(init);
  visit(state);
  for (int t = 0; t < steps; ++t) {
    state = advance(state, schedule, t);
    visit(state);
  }
}

std::vector<WalkState> evolve(const InitialCoin& init, const CoinPolicy& policy, int steps) {
  std::vector<WalkState> trajectory;
  trajectory.reserve(static_cast<std::size_t>(steps) + 1);
  evolve_visit(init, policy, steps, [&](const WalkState& s) { trajectory.push_back(s); });
  return trajectory;
}

WalkState final_state(const InitialCoin& init, const CoinPolicy& policy, int steps) {
  const CoinSchedule schedule(policy, steps);
  WalkState state = initial_state(init);
  for (int t = 0; t < steps; ++t) state = advance(state, schedule, t);
  return state;
}

InvariantReport check_invariants(const WalkState& state) {
  InvariantReport r;
  r.norm_error = std::abs(state.norm_squared() - 1.0);
  for (int j = state.min_site(); j <= state.max_site(); ++j) {
    if (((j - state.steps()) % 2) != 0) {
      r.parity_leak = std::max(r.parity_leak, state.spinor(j).cwiseAbs().maxCoeff());
    }
  }
  return r;
}

}  // namespace qwalk
