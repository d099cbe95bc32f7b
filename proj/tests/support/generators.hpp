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

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "polydyn/coalgebra.hpp"
#include "polydyn/lens.hpp"
#include "polydyn/open_system.hpp"
#include "polydyn/random_system.hpp"

namespace polydyn::testing {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline FinSet prefixed(const std::string& prefix, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < n; ++k) labels.push_back(prefix + std::to_string(k));
  return FinSet(std::move(labels));
}

/// Up to max_positions positions, fibers of size min_fiber..max_fiber.
inline Polynomial random_polynomial(Rng& rng, std::size_t max_positions = 4, std::size_t max_fiber = 3,
                                    std::size_t min_fiber = 0, std::size_t min_positions = 1) {
  FinSet positions = prefixed("i", pick(rng, min_positions, max_positions));
  std::vector<FinSet> fibers;
  for (std::size_t k = 0; k < positions.size(); ++k) fibers.push_back(prefixed("d", pick(rng, min_fiber, max_fiber)));
  return Polynomial(std::move(positions), std::move(fibers));
}

/// A uniformly drawn lens p -> q, or nullopt if none exists.
inline std::optional<Lens> random_lens(Rng& rng, const Polynomial& p, const Polynomial& q) {
  FinMap fwd(p.num_positions());
  std::vector<FinMap> bwd(p.num_positions());
  for (Index i = 0; i < p.num_positions(); ++i) {
    std::vector<Index> targets;
    for (Index j = 0; j < q.num_positions(); ++j) {
      if (q.fiber(j).empty() || !p.fiber(i).empty()) targets.push_back(j);
    }
    if (targets.empty()) return std::nullopt;
    fwd[i] = targets[pick(rng, 0, targets.size() - 1)];
    for (Index e = 0; e < q.fiber(fwd[i]).size(); ++e) bwd[i].push_back(pick(rng, 0, p.fiber(i).size() - 1));
  }
  return Lens(p, q, std::move(fwd), std::move(bwd));
}

inline Section random_section(Rng& rng, const Polynomial& p) {
  Section s;
  for (const auto& f : p.fibers()) s.choice.push_back(pick(rng, 0, f.size() - 1));
  return s;
}

inline FinMap random_map(Rng& rng, std::size_t dom, std::size_t cod) {
  FinMap f(dom);
  for (auto& x : f) x = pick(rng, 0, cod - 1);
  return f;
}

/// Discrete-time system with arbitrary output and update.
inline OpenSystem random_open_system(Rng& rng, const Polynomial& p, std::size_t n) {
  FinMap out = random_map(rng, n, p.num_positions());
  std::vector<FinMap> upd(n);
  for (Index s = 0; s < n; ++s) upd[s] = random_map(rng, p.fiber(out[s]).size(), n);
  return mk_open_discrete(p, prefixed("s", n), std::move(out), std::move(upd));
}

/// Random permutation of {0..n-1} whose order divides h: a product of cycles
/// with lengths dividing h.
inline FinMap random_periodic_permutation(Rng& rng, std::size_t n, std::size_t h) {
  std::vector<std::size_t> lengths;
  for (std::size_t d = 1; d <= h; ++d) {
    if (h % d == 0) lengths.push_back(d);
  }
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  FinMap perm(n);
  std::size_t at = 0;
  while (at < n) {
    std::size_t len = lengths[pick(rng, 0, lengths.size() - 1)];
    len = std::min(len, n - at);
    while (h % len != 0) --len;
    for (std::size_t k = 0; k < len; ++k) perm[order[at + k]] = order[at + (k + 1) % len];
    at += len;
  }
  return perm;
}

/// Z_h-time system that satisfies the flow law for every section: states are
/// split into one block per position, outputs are constant, and direction e at
/// position i acts at time t by pi_{i,e}^t for a permutation of order dividing h.
inline OpenSystem block_permutation_system(Rng& rng, const Polynomial& p, std::size_t h, std::size_t per_block) {
  const std::size_t n = p.num_positions() * per_block;
  TimeMonoid time = TimeMonoid::cyclic(h);
  FinMap out(n);
  for (Index s = 0; s < n; ++s) out[s] = s / per_block;
  std::vector<std::vector<FinMap>> perms(p.num_positions());
  for (Index i = 0; i < p.num_positions(); ++i) {
    for (Index e = 0; e < p.fiber(i).size(); ++e) perms[i].push_back(random_periodic_permutation(rng, per_block, h));
  }
  std::vector<FinMap> outs;
  std::vector<std::vector<FinMap>> upds;
  for (Index t : time.structural_times()) {
    const std::size_t power = std::stoul(time.label(t));
    outs.push_back(out);
    std::vector<FinMap> upd(n);
    for (Index s = 0; s < n; ++s) {
      const Index i = out[s];
      for (Index e = 0; e < p.fiber(i).size(); ++e) {
        upd[s].push_back(i * per_block + map_power(perms[i][e], power)[s % per_block]);
      }
    }
    upds.push_back(std::move(upd));
  }
  return mk_open(p, time, prefixed("s", n), std::move(outs), std::move(upds));
}

/// Row-stochastic kernel with entries from multiples of 1/den.
inline Kernel random_kernel(Rng& rng, std::size_t n, std::size_t den = 6) {
  std::vector<Dist> rows;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> parts(n, 0);
    for (std::size_t k = 0; k < den; ++k) ++parts[pick(rng, 0, n - 1)];
    std::vector<Rational> w;
    for (auto c : parts) w.emplace_back(Rational(static_cast<long>(c), static_cast<long>(den)));
    rows.emplace_back(std::move(w));
  }
  return Kernel(std::move(rows), n);
}

/// Omega x {0, 1} over {a: [u, v]} driven by rotation of Omega: u keeps the
/// switch, v flips it. proj is the first component.
struct SwitchBundle {
  OpenSystem sys;
  MetricSystem base;
  FinMap proj;
};

inline SwitchBundle switch_bundle(std::size_t omega) {
  FinSet o = FinSet::range(omega);
  FinSet m = FinSet::range(2);
  FinSet total = product(o, m);
  FinMap rot(omega);
  for (Index w = 0; w < omega; ++w) rot[w] = (w + 1) % omega;
  FinMap out(total.size(), 0);
  FinMap proj(total.size());
  std::vector<FinMap> upd(total.size(), FinMap(2));
  for (Index w = 0; w < omega; ++w) {
    for (Index x = 0; x < 2; ++x) {
      Index s = product_index(total, o, m, w, x);
      proj[s] = w;
      upd[s][0] = product_index(total, o, m, rot[w], x);
      upd[s][1] = product_index(total, o, m, rot[w], 1 - x);
    }
  }
  Polynomial p = monomial(FinSet{"a"}, FinSet{"u", "v"});
  MetricSystem base = mk_metric(mk_closed(TimeMonoid::discrete(), o, {rot}), uniform(omega));
  return {mk_open_discrete(p, total, std::move(out), std::move(upd)), std::move(base), std::move(proj)};
}

}  // namespace polydyn::testing
