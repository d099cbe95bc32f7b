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

#include <map>
#include <string>
#include <vector>

#include "polydyn/finset.hpp"

namespace polydyn {

/// A finite polynomial: a set of positions p(1) and, over each position i,
/// a finite set of directions p[i]. Empty fibers and empty position sets are
/// allowed.
class Polynomial {
 public:
  Polynomial() = default;
  /// Fibers are given in position order (fibers[i] is p[positions.label(i)]).
  Polynomial(FinSet positions, std::vector<FinSet> fibers);

  /// Keyed construction; rejects missing and unknown keys.
  static Polynomial make(const FinSet& positions, const std::map<std::string, FinSet>& fibers);

  [[nodiscard]] const FinSet& positions() const noexcept { return positions_; }
  [[nodiscard]] const FinSet& fiber(Index i) const { return fibers_.at(i); }
  [[nodiscard]] const std::vector<FinSet>& fibers() const noexcept { return fibers_; }
  [[nodiscard]] std::size_t num_positions() const noexcept { return positions_.size(); }
  /// |sum_i p[i]|
  [[nodiscard]] std::size_t total_directions() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  FinSet positions_;
  std::vector<FinSet> fibers_;
};

/// y: one position, one direction.
Polynomial identity_polynomial();
/// Constant polynomial on S: positions S, all fibers empty.
Polynomial constant_polynomial(const FinSet& s);
/// B y^A: positions B, every fiber A.
Polynomial monomial(const FinSet& positions, const FinSet& directions);

/// Total space sum_i p[i] as a set of labels "(i,d)".
FinSet total_space(const Polynomial& p);

/// p(X) = sum_i X^{p[i]}, labelled "(i,[x_1,...])" with the images listed in
/// fiber order.
FinSet eval_polynomial(const Polynomial& p, const FinSet& x, std::size_t cap = kDefaultCap);

/// Parallel product p (x) q.
Polynomial tensor(const Polynomial& p, const Polynomial& q);

/// Substitution product p <| q: positions (i, phi : p[i] -> q(1)), fibers
/// sum_{d in p[i]} q[phi(d)].
Polynomial composite(const Polynomial& p, const Polynomial& q, std::size_t cap = kDefaultCap);

/// Global section: one direction index per position.
struct Section {
  std::vector<Index> choice;
  friend bool operator==(const Section&, const Section&) = default;
};

bool is_section(const Polynomial& p, const Section& s);
Section make_section(const Polynomial& p, const std::map<std::string, std::string>& choice);
std::size_t count_sections(const Polynomial& p);
/// All sections in lexicographic order of their index tuples.
std::vector<Section> enumerate_sections(const Polynomial& p, std::size_t cap = kDefaultCap);

/// s |-> (s, sigma(out(s))): for each state, the chosen direction index inside
/// the fiber over its output position.
std::vector<Index> pull_section(const FinMap& out, const Section& sigma);

std::string describe(const Polynomial& p);
std::string describe(const Polynomial& p, const Section& s);

}  // namespace polydyn
