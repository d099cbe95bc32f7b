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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "polydyn/bundle.hpp"
#include "polydyn/coalgebra.hpp"
#include "polydyn/commands.hpp"
#include "polydyn/document.hpp"
#include "polydyn/lens.hpp"
#include "polydyn/markov.hpp"
#include "polydyn/nested.hpp"
#include "polydyn/ode.hpp"

using namespace polydyn;
namespace pt = polydyn::testing;

namespace {

constexpr std::uint64_t kSeed = 0x5eed2026;
constexpr std::size_t kLawInstances = 200;
constexpr std::size_t kCoalgSystems = 50;
constexpr std::size_t kMutants = 100;
constexpr std::size_t kKernels = 100;
constexpr std::size_t kCkRange = 6;
constexpr std::size_t kStationaryHorizon = 8;
constexpr std::size_t kPairTriples = 50;
constexpr std::size_t kNestingInstances = 40;
constexpr double kOdeDt = 1e-3;
constexpr std::size_t kOdeSteps = 1000;
constexpr double kOdeTolerance = 1e-6;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && first_.empty()) first_ = what;
    failures_ += ok ? 0 : 1;
  }
  [[nodiscard]] Outcome outcome(const std::string& summary) const {
    std::string d = summary + ", " + std::to_string(checks_) + " checks, " + std::to_string(failures_) + " failures";
    if (!first_.empty()) d += ", first: " + first_;
    return {failures_ == 0 && checks_ > 0, d};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

// Sum over forward maps f of prod_i |p[i]|^{|q[f(i)]|}, by direct iteration.
std::size_t brute_lens_count(const Polynomial& p, const Polynomial& q) {
  if (p.num_positions() == 0) return 1;
  if (q.num_positions() == 0) return 0;
  std::size_t total = 0;
  std::vector<Index> f(p.num_positions(), 0);
  std::vector<std::size_t> radix(p.num_positions(), q.num_positions());
  do {
    std::size_t prod = 1;
    for (Index i = 0; i < f.size(); ++i)
      for (std::size_t k = 0; k < q.fiber(f[i]).size(); ++k) prod *= p.fiber(i).size();
    total += prod;
  } while (next_odometer(f, radix));
  return total;
}

Polynomial poly_with_lens_from(pt::Rng& rng, const Polynomial& from, std::optional<Lens>& lens) {
  while (true) {
    Polynomial q = pt::random_polynomial(rng, 4, 3, 0, 1);
    lens = pt::random_lens(rng, from, q);
    if (lens) return q;
  }
}

Outcome criterion_category_laws() {
  pt::Rng rng(kSeed + 1);
  Tally tally;
  for (std::size_t k = 0; k < kLawInstances; ++k) {
    Polynomial a = pt::random_polynomial(rng, 4, 3, 0, 1);
    std::optional<Lens> f, g, h;
    Polynomial b = poly_with_lens_from(rng, a, f);
    Polynomial c = poly_with_lens_from(rng, b, g);
    Polynomial d = poly_with_lens_from(rng, c, h);
    const std::string at = "instance " + std::to_string(k);
    tally.expect(compose_lenses(*h, compose_lenses(*g, *f)) == compose_lenses(compose_lenses(*h, *g), *f),
                 at + " associativity");
    tally.expect(compose_lenses(identity_lens(b), *f) == *f, at + " left unit");
    tally.expect(compose_lenses(*f, identity_lens(a)) == *f, at + " right unit");
    tally.expect(tensor_lenses(identity_lens(a), identity_lens(d)) == identity_lens(tensor(a, d)),
                 at + " tensor of identities");
    tally.expect(tensor_lenses(compose_lenses(*g, *f), compose_lenses(*h, *g)) ==
                     compose_lenses(tensor_lenses(*g, *h), tensor_lenses(*f, *g)),
                 at + " interchange");
  }
  return tally.outcome(std::to_string(kLawInstances) + " lens triples");
}

Outcome criterion_hom_tensor() {
  Polynomial one = constant_polynomial(FinSet::singleton());
  Polynomial y = identity_polynomial();
  Polynomial y_plus_1 = Polynomial::make(FinSet{"a", "b"}, {{"a", FinSet{"*"}}, {"b", FinSet{}}});
  Polynomial y2 = monomial(FinSet{"*"}, FinSet{"0", "1"});
  Polynomial two_y = monomial(FinSet{"a", "b"}, FinSet{"*"});
  std::vector<Polynomial> pool{one, y, y_plus_1, y2, two_y};
  Tally tally;
  std::size_t lenses = 0;
  for (std::size_t ri = 0; ri < pool.size(); ++ri) {
    for (std::size_t qi = 0; qi < pool.size(); ++qi) {
      for (std::size_t pi = 0; pi < pool.size(); ++pi) {
        const Polynomial& r = pool[ri];
        const Polynomial& q = pool[qi];
        const Polynomial& p = pool[pi];
        const std::string at = "triple " + std::to_string(ri) + std::to_string(qi) + std::to_string(pi);
        InternalHom hom = make_internal_hom(q, p);
        auto lhs = enumerate_lenses(tensor(r, q), p);
        auto rhs = enumerate_lenses(r, *hom.poly);
        tally.expect(lhs.size() == rhs.size(), at + " cardinality");
        tally.expect(lhs.size() == brute_lens_count(tensor(r, q), p), at + " count oracle");
        tally.expect(rhs.size() == brute_lens_count(r, *hom.poly), at + " hom count oracle");
        for (const auto& f : lhs) tally.expect(uncurry(curry(f, r, q, p, hom), r, q, p, hom) == f, at + " curry");
        for (const auto& g : rhs) tally.expect(curry(uncurry(g, r, q, p, hom), r, q, p, hom) == g, at + " uncurry");
        lenses += lhs.size();
      }
    }
  }
  return tally.outcome("125 triples, " + std::to_string(lenses) + " lenses");
}

PTCoalgebra random_coalgebra(pt::Rng& rng, const Polynomial& p, std::size_t n, bool stochastic) {
  OpenSystem sys = pt::random_open_system(rng, p, n);
  if (!stochastic) return coalg_from_open(sys);
  std::vector<std::vector<Dist>> upd(n);
  for (Index s = 0; s < n; ++s) {
    for (Index e = 0; e < p.fiber(sys.out(1)[s]).size(); ++e) {
      std::vector<Rational> w(n);
      w[pt::pick(rng, 0, n - 1)] += Rational(1, 2);
      w[pt::pick(rng, 0, n - 1)] += Rational(1, 2);
      upd[s].emplace_back(std::move(w));
    }
  }
  return mk_pt_coalgebra(distribution_monad(), p, TimeMonoid::discrete(), sys.states(), {sys.out(1)}, {upd});
}

Outcome criterion_coalgebra_equivalence() {
  pt::Rng rng(kSeed + 3);
  Tally tally;
  std::size_t maps = 0;
  std::size_t valid = 0;
  for (std::size_t k = 0; k < kCoalgSystems; ++k) {
    Polynomial p = pt::random_polynomial(rng, 3, 2, 1, 1);
    const bool stochastic = k % 2 == 1;
    PTCoalgebra a = random_coalgebra(rng, p, pt::pick(rng, 1, 3), stochastic);
    PTCoalgebra b = random_coalgebra(rng, p, pt::pick(rng, 1, 3), stochastic);
    const std::string at = "system " + std::to_string(k);
    ClassicalCoalgebra ka = to_classical(a);
    ClassicalCoalgebra kb = to_classical(b);
    tally.expect(from_classical(ka) == a, at + " round trip");
    tally.expect(to_classical(from_classical(ka)) == ka, at + " classical round trip");
    for (const auto& [from, to, kfrom, kto] :
         {std::tuple{&a, &b, &ka, &kb}, std::tuple{&a, &a, &ka, &ka}, std::tuple{&b, &a, &kb, &ka}}) {
      std::vector<Index> f(from->num_states(), 0);
      std::vector<std::size_t> radix(from->num_states(), to->num_states());
      do {
        bool direct = check_coalg_morphism(f, *from, *to).ok;
        bool classical = check_classical_morphism(f, *kfrom, *kto).ok;
        bool back = check_coalg_morphism(f, from_classical(*kfrom), from_classical(*kto)).ok;
        tally.expect(direct == classical, at + " coalgebra to classical");
        tally.expect(classical == back, at + " classical to coalgebra");
        ++maps;
        valid += direct ? 1 : 0;
      } while (next_odometer(f, radix));
    }
  }
  return tally.outcome(std::to_string(kCoalgSystems) + " systems, " + std::to_string(maps) + " maps, " +
                       std::to_string(valid) + " morphisms");
}

// Rank-one idempotent kernels on the two-element time {0, 1} with 1 + 1 = 1.
PTCoalgebra idempotent_chain(pt::Rng& rng, std::size_t n) {
  TimeMonoid idem = TimeMonoid::table(FinSet{"0", "1"}, {FinMap{0, 1}, FinMap{1, 1}}, 0);
  std::vector<Rational> w(n);
  std::size_t den = 2 * n;
  for (Index x = 0; x < n; ++x) w[x] = Rational(1, static_cast<long>(den));
  for (std::size_t k = 0; k < den - n; ++k) w[pt::pick(rng, 0, n - 1)] += Rational(1, static_cast<long>(den));
  Dist nu(w);
  std::vector<std::vector<Dist>> at0(n), at1(n);
  for (Index x = 0; x < n; ++x) {
    at0[x] = {dirac(n, x)};
    at1[x] = {nu};
  }
  return mk_pt_coalgebra(distribution_monad(), identity_polynomial(), idem, pt::prefixed("s", n),
                         {FinMap(n, 0), FinMap(n, 0)}, {at0, at1});
}

PTCoalgebra as_distribution(const PTCoalgebra& c) {
  return PTCoalgebra::unchecked(distribution_monad(), c.interface_ptr(), c.time(), c.states(), c.out_table(),
                                c.upd_table());
}

Outcome criterion_flow_laws() {
  pt::Rng rng(kSeed + 4);
  Tally tally;
  std::vector<OpenSystem> opens;
  std::vector<PTCoalgebra> coalgs;
  for (std::size_t k = 0; k < 20; ++k) {
    Polynomial p = pt::random_polynomial(rng, 3, 3, 1, 1);
    OpenSystem sys = pt::block_permutation_system(rng, p, pt::pick(rng, 1, 4), pt::pick(rng, 2, 3));
    tally.expect(check_flow_open(sys).ok(), "open system " + std::to_string(k));
    PTCoalgebra c = coalg_from_open(sys);
    tally.expect(check_kleisli_flow(c).ok(), "identity coalgebra " + std::to_string(k));
    PTCoalgebra d = as_distribution(c);
    tally.expect(check_kleisli_flow(d).ok(), "distribution coalgebra " + std::to_string(k));
    opens.push_back(sys);
    coalgs.push_back(d);
  }
  for (std::size_t k = 0; k < 10; ++k) {
    PTCoalgebra c = idempotent_chain(rng, pt::pick(rng, 2, 4));
    tally.expect(check_kleisli_flow(c).ok(), "idempotent chain " + std::to_string(k));
    coalgs.push_back(c);
  }

  std::size_t killed = 0;
  for (std::size_t m = 0; m < kMutants; ++m) {
    bool detected = false;
    if (m % 2 == 0) {
      const OpenSystem& sys = opens[pt::pick(rng, 0, opens.size() - 1)];
      auto upd = sys.upd_table();
      std::size_t slot = pt::pick(rng, 0, upd.size() - 1);
      Index s = pt::pick(rng, 0, sys.num_states() - 1);
      Index e = pt::pick(rng, 0, upd[slot][s].size() - 1);
      Index old = upd[slot][s][e];
      upd[slot][s][e] = (old + pt::pick(rng, 1, sys.num_states() - 1)) % sys.num_states();
      OpenSystem mutant =
          OpenSystem::unchecked(sys.interface_ptr(), sys.time(), sys.states(), sys.out_table(), std::move(upd));
      detected = !check_flow_open(mutant).ok();
    } else {
      const PTCoalgebra& c = coalgs[pt::pick(rng, 0, coalgs.size() - 1)];
      auto upd = c.upd_table();
      std::size_t slot = pt::pick(rng, 0, upd.size() - 1);
      Index s = pt::pick(rng, 0, c.num_states() - 1);
      Index e = pt::pick(rng, 0, upd[slot][s].size() - 1);
      Dist old = upd[slot][s][e];
      Dist fresh = old;
      while (fresh == old) fresh = dirac(c.num_states(), pt::pick(rng, 0, c.num_states() - 1));
      upd[slot][s][e] = fresh;
      PTCoalgebra mutant =
          PTCoalgebra::unchecked(c.monad(), c.interface_ptr(), c.time(), c.states(), c.out_table(), std::move(upd));
      detected = !check_kleisli_flow(mutant).ok();
    }
    tally.expect(detected, "mutant " + std::to_string(m) + " survived");
    killed += detected ? 1 : 0;
  }
  return tally.outcome(std::to_string(opens.size()) + " open and " + std::to_string(coalgs.size()) +
                       " coalgebra systems, " + std::to_string(killed) + "/" + std::to_string(kMutants) +
                       " mutants killed");
}

std::vector<Dist> grid_rows(std::size_t n) {
  std::vector<Dist> rows;
  for (Index x = 0; x < n; ++x) rows.push_back(dirac(n, x));
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) {
      std::vector<Rational> w(n);
      w[x] = Rational(1, 2);
      w[y] = Rational(1, 2);
      rows.emplace_back(std::move(w));
    }
  }
  return rows;
}

Outcome criterion_markov_round_trip() {
  Tally tally;
  std::size_t kernels = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<Dist> rows = grid_rows(n);
    std::vector<Index> pick(n, 0);
    std::vector<std::size_t> radix(n, rows.size());
    do {
      std::vector<Dist> chosen;
      for (Index x = 0; x < n; ++x) chosen.push_back(rows[pick[x]]);
      Kernel k(chosen, n);
      ++kernels;
      for (std::size_t h = 1; h <= 3; ++h) {
        const std::string at = "|M|=" + std::to_string(n) + " H=" + std::to_string(h) + " kernel " +
                               std::to_string(kernels);
        ClosedRDS rds = kernel_to_rds(k, FinSet::range(n), h);
        tally.expect(extract_markov(rds).kernel == k, at + " round trip");
        tally.expect(is_measure_preserving(rds.base.closed.action(1), rds.base.space).ok, at + " shift");
        tally.expect(map_power(rds.base.closed.action(1), h) == identity_map(rds.base.space.carrier.size()),
                     at + " shift period");
      }
    } while (next_odometer(pick, radix));
  }
  return tally.outcome(std::to_string(kernels) + " grid kernels x H in {1,2,3}");
}

using Matrix = std::vector<std::vector<Rational>>;

Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.size(), std::vector<Rational>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Matrix as_matrix(const Kernel& k) {
  Matrix m(k.dom_size(), std::vector<Rational>(k.cod_size()));
  for (Index x = 0; x < k.dom_size(); ++x)
    for (Index y = 0; y < k.cod_size(); ++y) m[x][y] = k(y, x);
  return m;
}

Outcome criterion_chapman_kolmogorov() {
  pt::Rng rng(kSeed + 6);
  Tally tally;
  std::size_t stationary = 0;
  for (std::size_t k = 0; k < kKernels; ++k) {
    Kernel kern = pt::random_kernel(rng, 3);
    std::vector<std::vector<Dist>> upd;
    for (const auto& row : kern.rows()) upd.push_back({row});
    PTCoalgebra c = mk_pt_coalgebra(distribution_monad(), identity_polynomial(), TimeMonoid::discrete(),
                                    FinSet::range(3), {FinMap(3, 0)}, {upd});
    KleisliClosure clo = kleisli_closure(c, Section{{0}});
    const std::string at = "kernel " + std::to_string(k);
    std::vector<Matrix> powers{as_matrix(identity_kernel(3))};
    for (std::size_t t = 1; t < 2 * kCkRange; ++t) powers.push_back(matmul(powers.back(), as_matrix(kern)));
    for (std::size_t t = 0; t < 2 * kCkRange; ++t) tally.expect(as_matrix(clo.at(t)) == powers[t], at + " power oracle");
    for (std::size_t s = 0; s < kCkRange; ++s) {
      for (std::size_t t = 0; t < kCkRange; ++t) {
        tally.expect(clo.at(s + t) == kleisli_compose(clo.at(s), clo.at(t)),
                     at + " s=" + std::to_string(s) + " t=" + std::to_string(t));
      }
    }
    if (auto nu = stationary_distribution(kern)) {
      ++stationary;
      Matrix row{nu->weights()};
      tally.expect(matmul(row, as_matrix(kern)) == row, at + " stationary oracle");
      for (std::size_t t = 0; t <= kStationaryHorizon; ++t) {
        tally.expect(apply_kernel(clo.at(t), *nu) == *nu, at + " stationary at t=" + std::to_string(t));
      }
    }
  }
  return tally.outcome(std::to_string(kKernels) + " kernels, s,t in 0.." + std::to_string(kCkRange - 1) + ", " +
                       std::to_string(stationary) + " with a unique stationary law");
}

struct Chain {
  std::vector<pt::SwitchBundle> systems;
  std::vector<TotalMorphism> arrows;  // arrows[k]: systems[k] -> systems[k+1]
};

Chain random_chain(pt::Rng& rng) {
  std::vector<std::size_t> sizes(4);
  sizes[3] = pt::pick(rng, 1, 3);
  for (int k = 2; k >= 0; --k) sizes[k] = sizes[k + 1] * pt::pick(rng, 1, 2);
  Chain chain;
  for (auto n : sizes) chain.systems.push_back(pt::switch_bundle(n));
  for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
    const bool flip = pt::pick(rng, 0, 1) == 1;
    TotalMorphism m;
    m.state_cod = 2 * sizes[k + 1];
    m.base_cod = sizes[k + 1];
    for (Index w = 0; w < sizes[k]; ++w) m.base_map.push_back(w % sizes[k + 1]);
    for (Index s = 0; s < 2 * sizes[k]; ++s) {
      Index w = s / 2;
      Index x = s % 2;
      m.state_map.push_back(2 * (w % sizes[k + 1]) + (flip ? 1 - x : x));
    }
    chain.arrows.push_back(std::move(m));
  }
  return chain;
}

Outcome criterion_grothendieck() {
  pt::Rng rng(kSeed + 7);
  Tally tally;
  for (std::size_t k = 0; k < kPairTriples; ++k) {
    Chain chain = random_chain(rng);
    std::vector<OpenRDS> rds;
    std::vector<CoalgBundle> cb;
    for (const auto& s : chain.systems) {
      rds.push_back(mk_open_rds(s.sys, s.base, s.proj));
      cb.push_back(mk_coalg_bundle(coalg_from_open(s.sys), coalg_from_open(open_from_closed(s.base.closed)), s.proj));
    }
    const auto& [f, g, h] = std::tie(chain.arrows[0], chain.arrows[1], chain.arrows[2]);
    const std::string at = "triple " + std::to_string(k);
    for (std::size_t a = 0; a < 3; ++a) {
      tally.expect(check_total_rds_morphism(chain.arrows[a], rds[a], rds[a + 1]).ok, at + " rds pair valid");
      tally.expect(check_total_coalg_morphism(chain.arrows[a], cb[a], cb[a + 1]).ok, at + " coalgebra pair valid");
    }
    TotalMorphism left = compose_total_morphisms(h, compose_total_morphisms(g, f));
    TotalMorphism right = compose_total_morphisms(compose_total_morphisms(h, g), f);
    tally.expect(left == right, at + " associativity");
    tally.expect(compose_coalg_total_morphisms(h, compose_coalg_total_morphisms(g, f)) ==
                     compose_coalg_total_morphisms(compose_coalg_total_morphisms(h, g), f),
                 at + " coalgebra associativity");
    TotalMorphism id0 = identity_total_morphism(rds[0].sys.num_states(), rds[0].base.closed.states().size());
    TotalMorphism id1 = identity_total_morphism(rds[1].sys.num_states(), rds[1].base.closed.states().size());
    tally.expect(compose_total_morphisms(f, id0) == f, at + " right unit");
    tally.expect(compose_total_morphisms(id1, f) == f, at + " left unit");
    tally.expect(left.state_map == compose_maps(h.state_map, compose_maps(g.state_map, f.state_map)),
                 at + " underlying maps");
    tally.expect(check_total_rds_morphism(left, rds[0], rds[3]).ok, at + " composite valid");
    tally.expect(check_total_coalg_morphism(left, cb[0], cb[3]).ok, at + " coalgebra composite valid");
  }
  return tally.outcome(std::to_string(kPairTriples) + " triples over rds and coalgebra bundles");
}

// Base over b with direction-injective updates; top = base x M over p with
// n surjective and m sending (i, d) into the fiber over n(i).
struct NestingInstance {
  NestedPoly nested;
  BundleSystem bundle;
};

NestingInstance random_nesting(pt::Rng& rng) {
  const std::size_t base_states = 3;
  Polynomial b = pt::random_polynomial(rng, 2, 3, 1, 1);
  FinMap base_out = pt::random_map(rng, base_states, b.num_positions());
  std::vector<FinMap> base_upd(base_states);
  for (Index x = 0; x < base_states; ++x) {
    std::vector<Index> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    base_upd[x].assign(perm.begin(), perm.begin() + b.fiber(base_out[x]).size());
  }
  OpenSystem base = mk_open_discrete(b, FinSet::range(base_states), base_out, base_upd);

  const std::size_t extra = pt::pick(rng, 0, 2);
  std::vector<std::string> pos;
  std::map<std::string, FinSet> fibers;
  FinMap n;
  for (Index k = 0; k < b.num_positions() + extra; ++k) {
    pos.push_back("i" + std::to_string(k));
    n.push_back(k < b.num_positions() ? k : pt::pick(rng, 0, b.num_positions() - 1));
  }
  FinSet positions(pos);
  FinMap n_sorted(positions.size());
  std::vector<std::vector<Direction>> m(positions.size());
  std::vector<FinSet> fiber_sets(positions.size());
  for (Index k = 0; k < pos.size(); ++k) {
    Index i = positions.index_of(pos[k]);
    n_sorted[i] = n[k];
    fiber_sets[i] = pt::prefixed("d", pt::pick(rng, 1, 3));
    for (Index d = 0; d < fiber_sets[i].size(); ++d) {
      m[i].push_back(Direction{n[k], pt::pick(rng, 0, b.fiber(n[k]).size() - 1)});
    }
  }
  Polynomial p(positions, fiber_sets);

  const std::size_t ms = 2;
  const std::size_t top_states = base_states * ms;
  FinMap proj(top_states);
  FinMap top_out(top_states);
  std::vector<FinMap> top_upd(top_states);
  for (Index w = 0; w < top_states; ++w) {
    Index x = w / ms;
    proj[w] = x;
    std::vector<Index> over;
    for (Index i = 0; i < p.num_positions(); ++i)
      if (n_sorted[i] == base_out[x]) over.push_back(i);
    Index i = over[pt::pick(rng, 0, over.size() - 1)];
    top_out[w] = i;
    for (Index d = 0; d < p.fiber(i).size(); ++d) {
      top_upd[w].push_back(base_upd[x][m[i][d].dir] * ms + pt::pick(rng, 0, ms - 1));
    }
  }
  OpenSystem top = mk_open_discrete(p, FinSet::range(top_states), top_out, top_upd);
  NestedPoly nested = mk_nested(p, b, m, n_sorted);
  return {std::move(nested), BundleSystem{std::move(top), std::move(base), std::move(proj), std::nullopt}};
}

bool rejects(const NestedPoly& nested, const BundleSystem& bundle) {
  try {
    (void)nesting_lift(nested, bundle, 1);
  } catch (const Error& e) {
    return e.kind() == ErrorKind::NestingConditionFails;
  }
  return false;
}

Outcome criterion_nesting() {
  pt::Rng rng(kSeed + 8);
  Tally tally;
  std::size_t perturbations = 0;
  for (std::size_t k = 0; k < kNestingInstances; ++k) {
    const std::string at = "instance " + std::to_string(k);
    // b = y: the lift is forced to pi composed with the projection to states.
    Polynomial p = pt::random_polynomial(rng, 3, 3, 0, 1);
    std::size_t omega = pt::pick(rng, 1, 3);
    std::size_t ms = pt::pick(rng, 1, 2);
    FinMap rot(omega);
    for (Index w = 0; w < omega; ++w) rot[w] = (w + 1) % omega;
    OpenSystem base_y = open_from_closed(mk_closed(TimeMonoid::discrete(), FinSet::range(omega), {rot}));
    FinMap out = pt::random_map(rng, omega * ms, p.num_positions());
    std::vector<FinMap> upd(omega * ms);
    FinMap proj(omega * ms);
    for (Index s = 0; s < omega * ms; ++s) {
      proj[s] = s / ms;
      for (Index d = 0; d < p.fiber(out[s]).size(); ++d) upd[s].push_back(rot[s / ms] * ms + pt::pick(rng, 0, ms - 1));
    }
    OpenSystem top = mk_open_discrete(p, FinSet::range(omega * ms), out, upd);
    BundleSystem over_y = mk_bundle_system(top, base_y, proj);
    Lift forced = nesting_lift(nest_over_y(p), over_y, 1);
    bool equal = true;
    for (Index w = 0; w < forced.size(); ++w)
      for (const auto& d : forced[w]) equal = equal && d == Direction{proj[w], 0};
    tally.expect(equal, at + " forced lift");

    NestingInstance inst = random_nesting(rng);
    Lift lift = nesting_lift(inst.nested, inst.bundle, 1);
    CubeData cube = cube_data(inst.bundle, 1);
    tally.expect(check_lift_cube(inst.nested, cube, lift).ok, at + " constructed lift");
    for (Index w = 0; w < lift.size(); ++w) {
      for (Index d = 0; d < lift[w].size(); ++d) {
        for (Index x = 0; x < inst.bundle.base.num_states(); ++x) {
          for (Index e = 0; e < inst.nested.base.fiber(inst.bundle.base.out(1)[x]).size(); ++e) {
            if (Direction{x, e} == lift[w][d]) continue;
            Lift other = lift;
            other[w][d] = Direction{x, e};
            tally.expect(!check_lift_cube(inst.nested, cube, other).ok, at + " uniqueness");
          }
        }
      }
    }
    for (Index i = 0; i < inst.nested.top.num_positions(); ++i) {
      bool used = std::find(inst.bundle.top.out(1).begin(), inst.bundle.top.out(1).end(), i) !=
                  inst.bundle.top.out(1).end();
      if (!used) continue;
      for (Index d = 0; d < inst.nested.top.fiber(i).size(); ++d) {
        const Direction here = inst.nested.m[i][d];
        for (Index k2 = 0; k2 < inst.nested.base.num_positions(); ++k2) {
          for (Index e = 0; e < inst.nested.base.fiber(k2).size(); ++e) {
            if (Direction{k2, e} == here) continue;
            NestedPoly bad = inst.nested;
            bad.m[i][d] = Direction{k2, e};
            tally.expect(rejects(bad, inst.bundle), at + " perturbed m accepted");
            ++perturbations;
          }
        }
      }
    }
  }
  return tally.outcome(std::to_string(kNestingInstances) + " forced and constructed instances, " +
                       std::to_string(perturbations) + " perturbations of m");
}

Outcome criterion_ode() {
  OdeOpenSystem sys = ode_closed(1, [](const Vec& x) { return Vec{-x[0]}; }, kOdeDt, kOdeSteps);
  NumericFlow flow(sys, Section{{0}});
  double worst = 0.0;
  std::vector<Vec> samples{Vec{1.0}, Vec{-0.5}, Vec{2.0}};
  for (const Vec& x0 : samples) {
    std::vector<Vec> orbit = flow.orbit(kOdeSteps, x0);
    for (std::size_t k = 0; k <= kOdeSteps; ++k) {
      double exact = x0[0] * std::exp(-static_cast<double>(k) * kOdeDt);
      worst = std::max(worst, std::abs(orbit[k][0] - exact));
    }
  }
  LawReport report = check_flow_numeric(flow, samples, kOdeTolerance);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", worst);
  Outcome o;
  o.pass = worst <= kOdeTolerance && report.ok();
  o.detail = "max error " + std::string(buf) + " vs tolerance 1e-6, " + std::to_string(report.cases()) +
             " flow cases, " + std::to_string(report.failures().size()) + " flow failures";
  return o;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string run_corpus_once(const std::vector<std::filesystem::path>& files) {
  std::string all;
  for (const auto& f : files) {
    Document doc = parse_document(read_file(f));
    all += cmd_check(doc, "all").report;
    all += cmd_check(doc, "all", kDefaultCap, "json").report;
    for (const auto& [name, def] : doc.systems) {
      if (std::holds_alternative<OpenDef>(def) || std::holds_alternative<ClosedDef>(def) ||
          std::holds_alternative<CoalgDef>(def)) {
        SimulateOptions opts;
        opts.system = name;
        opts.steps = 25;
        opts.seed = 42;
        all += cmd_simulate(doc, opts).output;
        opts.format = "json";
        all += cmd_simulate(doc, opts).output;
      }
    }
  }
  return all;
}

Outcome criterion_determinism() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(POLYDYN_CORPUS_DIR)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::string first = run_corpus_once(files);
  std::string second = run_corpus_once(files);
  Outcome o;
  o.pass = !files.empty() && first == second;
  o.detail = std::to_string(files.size()) + " documents, " + std::to_string(first.size()) + " bytes per run, " +
             (first == second ? "identical" : "different");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"category and functor laws", criterion_category_laws},
      {"hom-tensor adjunction", criterion_hom_tensor},
      {"coalgebra equivalence", criterion_coalgebra_equivalence},
      {"flow laws and mutants", criterion_flow_laws},
      {"markov round trip", criterion_markov_round_trip},
      {"chapman-kolmogorov", criterion_chapman_kolmogorov},
      {"grothendieck composition", criterion_grothendieck},
      {"nesting condition", criterion_nesting},
      {"ode adapter", criterion_ode},
      {"determinism", criterion_determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
