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


#include "polydyn/probability.hpp"

#include <utility>

namespace polydyn {

Dist::Dist(std::vector<Rational> weights) : w_(std::move(weights)) {
  Rational total = 0;
  for (std::size_t x = 0; x < w_.size(); ++x) {
    if (w_[x] < 0) throw Error(ErrorKind::InvalidDistribution, "negative weight at element " + std::to_string(x));
    total += w_[x];
  }
  if (total != 1) throw Error(ErrorKind::InvalidDistribution, "weights sum to " + to_string(total));
}

std::vector<Index> Dist::support() const {
  std::vector<Index> out;
  for (Index x = 0; x < w_.size(); ++x) {
    if (w_[x] != 0) out.push_back(x);
  }
  return out;
}

Dist dirac(std::size_t n, Index x) {
  if (x >= n) throw Error(ErrorKind::InvalidDistribution, "dirac point outside the carrier");
  std::vector<Rational> w(n);
  w[x] = 1;
  return Dist(std::move(w));
}

Dist uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidDistribution, "uniform distribution on an empty set");
  return Dist(std::vector<Rational>(n, Rational(1, static_cast<long>(n))));
}

Dist pushforward(const FinMap& f, const Dist& d, std::size_t codomain_size) {
  if (f.size() != d.size()) throw Error(ErrorKind::InterfaceMismatch, "pushforward map and distribution disagree on the domain");
  std::vector<Rational> w(codomain_size);
  for (Index x = 0; x < f.size(); ++x) w.at(f[x]) += d[x];
  return Dist(std::move(w));
}

Kernel::Kernel(std::vector<Dist> rows, std::size_t cod) : rows_(std::move(rows)), cod_(cod) {
  for (Index x = 0; x < rows_.size(); ++x) {
    if (rows_[x].size() != cod_) {
      throw Error(ErrorKind::InvalidDistribution, "row " + std::to_string(x) + " is not a distribution on the codomain");
    }
  }
}

Kernel identity_kernel(std::size_t n) { return deterministic_kernel(identity_map(n), n); }

Kernel deterministic_kernel(const FinMap& f, std::size_t cod) {
  std::vector<Dist> rows;
  rows.reserve(f.size());
  for (Index y : f) rows.push_back(dirac(cod, y));
  return Kernel(std::move(rows), cod);
}

Kernel kleisli_compose(const Kernel& k2, const Kernel& k1) {
  if (k1.cod_size() != k2.dom_size()) throw Error(ErrorKind::InterfaceMismatch, "kernel carriers do not chain");
  std::vector<Dist> rows;
  rows.reserve(k1.dom_size());
  for (const Dist& r : k1.rows()) rows.push_back(apply_kernel(k2, r));
  return Kernel(std::move(rows), k2.cod_size());
}

Kernel kleisli_power(const Kernel& k, std::size_t t) {
  Kernel out = identity_kernel(k.dom_size());
  for (std::size_t s = 0; s < t; ++s) out = kleisli_compose(k, out);
  return out;
}

Dist apply_kernel(const Kernel& k, const Dist& d) {
  if (d.size() != k.dom_size()) throw Error(ErrorKind::InterfaceMismatch, "distribution does not live on the kernel domain");
  std::vector<Rational> w(k.cod_size());
  for (Index x = 0; x < d.size(); ++x) {
    if (d[x] == 0) continue;
    const Dist& r = k.row(x);
    for (Index y = 0; y < w.size(); ++y) {
      if (r[y] != 0) w[y] += d[x] * r[y];
    }
  }
  return Dist(std::move(w));
}

Kernel map_kernel(const FinMap& f, const Kernel& k, std::size_t codomain_size) {
  std::vector<Dist> rows;
  rows.reserve(k.dom_size());
  for (const Dist& r : k.rows()) rows.push_back(pushforward(f, r, codomain_size));
  return Kernel(std::move(rows), codomain_size);
}

ProbSpace mk_prob_space(FinSet carrier, Dist measure) {
  if (carrier.size() != measure.size()) {
    throw Error(ErrorKind::InvalidDistribution, "measure has " + std::to_string(measure.size()) +
                                                    " weights for a carrier of " + std::to_string(carrier.size()));
  }
  return ProbSpace{std::move(carrier), std::move(measure)};
}

namespace {

Check compare_measures(const Dist& after, const ProbSpace& space) {
  for (Index x = 0; x < after.size(); ++x) {
    if (after[x] != space.measure[x]) {
      return Check::fail("weight of '" + space.carrier.label(x) + "' moves from " + to_string(space.measure[x]) +
                         " to " + to_string(after[x]));
    }
  }
  return Check::pass();
}

}  // namespace

Check is_measure_preserving(const FinMap& step, const ProbSpace& space) {
  return compare_measures(pushforward(step, space.measure, space.carrier.size()), space);
}

Check is_measure_preserving(const Kernel& step, const ProbSpace& space) {
  return compare_measures(apply_kernel(step, space.measure), space);
}

Pushback randomness_pushback(const Kernel& k, const FinSet& states, std::size_t cap) {
  const std::size_t n = states.size();
  if (k.dom_size() != n || k.cod_size() != n) throw Error(ErrorKind::InterfaceMismatch, "kernel is not an endo-kernel on the states");
  require_within_cap(saturating_pow(n, n), cap, "randomness pushback");
  FinSet omega = function_space(states, states, cap);
  std::vector<FinMap> maps(omega.size());
  std::vector<Rational> gamma(omega.size());
  // Odometer order and label order can differ, so place each map by label.
  std::vector<Index> digits(n, 0);
  std::vector<std::size_t> radices(n, n);
  std::vector<std::string> images(n);
  if (!omega.empty()) {
    do {
      Rational w = 1;
      for (Index m = 0; m < n; ++m) {
        images[m] = states.label(digits[m]);
        w *= k(digits[m], m);
      }
      Index idx = omega.index_of(encode_list(images));
      maps[idx] = digits;
      gamma[idx] = w;
    } while (next_odometer(digits, radices));
  }
  return Pushback{ProbSpace{std::move(omega), Dist(std::move(gamma))}, std::move(maps)};
}

std::pair<Index, SplitMix64> sample(const Dist& d, SplitMix64 prng) {
  const std::uint64_t bits = prng.next() >> 11;
  const Rational u = Rational(boost::multiprecision::mpz_int(bits), boost::multiprecision::mpz_int(1) << 53);
  Rational cumulative = 0;
  Index last = 0;
  for (Index x = 0; x < d.size(); ++x) {
    if (d[x] == 0) continue;
    cumulative += d[x];
    last = x;
    if (u < cumulative) return {x, prng};
  }
  return {last, prng};
}

std::optional<Dist> stationary_distribution(const Kernel& k) {
  // Solve nu (K - I) = 0 with sum nu = 1 by exact Gauss-Jordan elimination on
  // the transposed system.
  const std::size_t n = k.dom_size();
  if (n == 0 || k.cod_size() != n) return std::nullopt;
  std::vector<std::vector<Rational>> a(n + 1, std::vector<Rational>(n + 1));
  for (Index y = 0; y < n; ++y) {
    for (Index x = 0; x < n; ++x) a[y][x] = k(y, x) - (x == y ? 1 : 0);
  }
  for (Index x = 0; x < n; ++x) a[n][x] = 1;
  a[n][n] = 1;
  std::size_t row = 0;
  std::vector<Index> pivots;
  for (Index col = 0; col < n && row <= n; ++col) {
    std::size_t piv = row;
    while (piv <= n && a[piv][col] == 0) ++piv;
    if (piv > n) return std::nullopt;
    std::swap(a[piv], a[row]);
    Rational lead = a[row][col];
    for (auto& v : a[row]) v /= lead;
    for (std::size_t r = 0; r <= n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rational factor = a[r][col];
      for (Index c = 0; c <= n; ++c) a[r][c] -= factor * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r <= n; ++r) {
    if (a[r][n] != 0) return std::nullopt;
  }
  std::vector<Rational> nu(n);
  for (Index r = 0; r < n; ++r) nu[pivots[r]] = a[r][n];
  for (const auto& v : nu) {
    if (v < 0) return std::nullopt;
  }
  return Dist(std::move(nu));
}

}  // namespace polydyn
