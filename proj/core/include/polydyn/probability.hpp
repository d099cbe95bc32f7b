// Copyright 2026 The polydyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polydyn/error.hpp"
#include "polydyn/finset.hpp"
#include "polydyn/rational.hpp"

namespace polydyn {

/// Finite distribution over {0..n-1}: nonnegative weights summing to exactly 1.
class Dist {
 public:
  Dist() = default;
  /// Throws InvalidDistribution on a negative weight or a sum other than 1.
  explicit Dist(std::vector<Rational> weights);

  [[nodiscard]] std::size_t size() const noexcept { return w_.size(); }
  [[nodiscard]] const Rational& operator[](Index x) const { return w_.at(x); }
  [[nodiscard]] const std::vector<Rational>& weights() const noexcept { return w_; }
  /// Indices with nonzero weight, ascending.
  [[nodiscard]] std::vector<Index> support() const;

  friend bool operator==(const Dist&, const Dist&) = default;

 private:
  std::vector<Rational> w_;
};

Dist dirac(std::size_t n, Index x);
Dist uniform(std::size_t n);
/// weight(y) = sum_{f(x) = y} d(x).
Dist pushforward(const FinMap& f, const Dist& d, std::size_t codomain_size);

/// Stochastic map X ~> Y as one distribution over Y per x.
class Kernel {
 public:
  Kernel() = default;
  /// Every row must be a distribution over exactly `cod` elements.
  Kernel(std::vector<Dist> rows, std::size_t cod);

  [[nodiscard]] std::size_t dom_size() const noexcept { return rows_.size(); }
  [[nodiscard]] std::size_t cod_size() const noexcept { return cod_; }
  [[nodiscard]] const Dist& row(Index x) const { return rows_.at(x); }
  [[nodiscard]] const std::vector<Dist>& rows() const noexcept { return rows_; }
  [[nodiscard]] const Rational& operator()(Index y, Index x) const { return rows_.at(x)[y]; }

  friend bool operator==(const Kernel&, const Kernel&) = default;

 private:
  std::vector<Dist> rows_;
  std::size_t cod_ = 0;
};

Kernel identity_kernel(std::size_t n);
/// Dirac rows of a deterministic map.
Kernel deterministic_kernel(const FinMap& f, std::size_t cod);
/// row(x)(z) = sum_y k2(z|y) k1(y|x); throws InterfaceMismatch on carrier mismatch.
Kernel kleisli_compose(const Kernel& k2, const Kernel& k1);
/// The t-fold Kleisli power (t = 0 gives the identity).
Kernel kleisli_power(const Kernel& k, std::size_t t);
/// Distribution after one step: sum_x d(x) k(.|x).
Dist apply_kernel(const Kernel& k, const Dist& d);
/// Pushes every row forward along f: the kernel Tf after k.
Kernel map_kernel(const FinMap& f, const Kernel& k, std::size_t codomain_size);

struct ProbSpace {
  FinSet carrier;
  Dist measure;
};

/// Throws InvalidDistribution if the measure does not live on the carrier.
ProbSpace mk_prob_space(FinSet carrier, Dist measure);

/// Exact check that the step pushes the measure to itself; the witness names
/// the first element whose weight changes.
Check is_measure_preserving(const FinMap& step, const ProbSpace& space);
Check is_measure_preserving(const Kernel& step, const ProbSpace& space);

/// Omega = all maps M -> M (labelled as lists), gamma(w) = prod_m k(w(m)|m),
/// and maps[w] is the deterministic map tau(w, -).
struct Pushback {
  ProbSpace omega;
  std::vector<FinMap> maps;
};

/// Throws EnumerationTooLarge if |M|^|M| exceeds cap.
Pushback randomness_pushback(const Kernel& k, const FinSet& states, std::size_t cap = kDefaultCap);

/// splitmix64; state is a plain value so it can be threaded through calls.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

/// Inverse-CDF draw in canonical order from u = (next() >> 11) / 2^53,
/// compared exactly against the cumulative weights.
std::pair<Index, SplitMix64> sample(const Dist& d, SplitMix64 prng);

/// The unique nu with nu k = nu, or nullopt when it is not unique.
std::optional<Dist> stationary_distribution(const Kernel& k);

}  // namespace polydyn
