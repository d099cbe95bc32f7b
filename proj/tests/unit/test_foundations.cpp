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


#include <fstream>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "polydyn/law_report.hpp"
#include "polydyn/probability.hpp"
#include "polydyn/time_monoid.hpp"

using namespace polydyn;

namespace {

Rational q(long n, long d) { return Rational(n, d); }

std::vector<FinMap> mod_table(std::size_t n) {
  std::vector<FinMap> add(n, FinMap(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) add[a][b] = (a + b) % n;
  return add;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("rationals parse and print canonically") {
  CHECK(to_string(parse_rational("2/4")) == "1/2");
  CHECK(to_string(parse_rational("3")) == "3");
  CHECK(to_string(parse_rational("0/7")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("cyclic time monoid passes and a corrupted table is caught") {
  CHECK(monoid_laws(TimeMonoid::cyclic(4)).ok());
  auto add = mod_table(4);
  add[2][2] = 1;
  LawReport r = check_table_laws(FinSet::range(4), add, 0);
  CHECK(!r.ok());
  bool saw_assoc = false;
  for (const auto& f : r.failures()) saw_assoc |= f.law == "associativity" || f.law == "commutativity";
  CHECK(saw_assoc);
  CHECK(!check_table_laws(FinSet::range(3), mod_table(3), 1).ok());
}

TEST_CASE("table time rejects malformed tables") {
  try {
    TimeMonoid::table(FinSet::range(2), {FinMap{0, 1}}, 0);
    FAIL("expected InvalidTable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidTable);
  }
  TimeMonoid t = TimeMonoid::cyclic(6);
  CHECK(t.add(4, 5) == 3);
  CHECK(t.structural_times().size() == 6);
  TimeMonoid n = TimeMonoid::discrete();
  CHECK(n.structural_times() == std::vector<Index>{1});
  CHECK(n.law_times().size() == TimeMonoid::kDiscreteLawBound + 1);
}

TEST_CASE("distributions validate exactly") {
  CHECK_NOTHROW(Dist({q(1, 3), q(2, 3)}));
  try {
    Dist({q(1, 3), q(1, 3)});
    FAIL("expected InvalidDistribution");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDistribution);
  }
  CHECK_THROWS_AS(Dist({q(-1, 2), q(3, 2)}), Error);
  CHECK(uniform(4).support().size() == 4);
  CHECK(dirac(3, 1).support() == std::vector<Index>{1});
}

TEST_CASE("pushforward collapses mass") {
  Dist d = pushforward(FinMap{0, 1, 1}, uniform(3), 2);
  CHECK(d[0] == q(1, 3));
  CHECK(d[1] == q(2, 3));
  FinMap f{1, 0, 1};
  FinMap g{0, 0};
  CHECK(pushforward(compose_maps(g, f), uniform(3), 1) == pushforward(g, pushforward(f, uniform(3), 2), 1));
}

TEST_CASE("kleisli composition is associative and unital") {
  polydyn::testing::Rng rng(17);
  for (int k = 0; k < 20; ++k) {
    Kernel a = polydyn::testing::random_kernel(rng, 3);
    Kernel b = polydyn::testing::random_kernel(rng, 3);
    Kernel c = polydyn::testing::random_kernel(rng, 3);
    CHECK(kleisli_compose(c, kleisli_compose(b, a)) == kleisli_compose(kleisli_compose(c, b), a));
    CHECK(kleisli_compose(identity_kernel(3), a) == a);
    CHECK(kleisli_compose(a, identity_kernel(3)) == a);
    CHECK(kleisli_power(a, 0) == identity_kernel(3));
    CHECK(kleisli_power(a, 3) == kleisli_compose(a, kleisli_compose(a, a)));
  }
  CHECK_THROWS_AS(kleisli_compose(identity_kernel(2), identity_kernel(3)), Error);
}

TEST_CASE("kernel entries follow the rows") {
  Kernel k({Dist({q(1, 2), q(1, 2)}), Dist({q(1, 4), q(3, 4)})}, 2);
  CHECK(k(1, 1) == q(3, 4));
  Dist after = apply_kernel(k, dirac(2, 0));
  CHECK(after == Dist({q(1, 2), q(1, 2)}));
}

TEST_CASE("coin pushback") {
  FinSet coin{"H", "T"};
  Kernel k({uniform(2), uniform(2)}, 2);
  Pushback pb = randomness_pushback(k, coin);
  CHECK(pb.omega.carrier.size() == 4);
  for (const auto& w : pb.omega.measure.weights()) CHECK(w == q(1, 4));
  for (Index x = 0; x < 2; ++x) {
    std::vector<Rational> acc(2, Rational(0));
    for (Index w = 0; w < pb.maps.size(); ++w) acc[pb.maps[w][x]] += pb.omega.measure[w];
    CHECK(Dist(acc) == k.row(x));
  }
  CHECK_THROWS_AS(randomness_pushback(identity_kernel(9), FinSet::range(9), 1000), Error);
}

TEST_CASE("pushback reproduces random kernels") {
  polydyn::testing::Rng rng(99);
  for (int t = 0; t < 25; ++t) {
    std::size_t n = polydyn::testing::pick(rng, 1, 3);
    Kernel k = polydyn::testing::random_kernel(rng, n);
    Pushback pb = randomness_pushback(k, FinSet::range(n));
    for (Index x = 0; x < n; ++x) {
      std::vector<Rational> acc(n, Rational(0));
      for (Index w = 0; w < pb.maps.size(); ++w) acc[pb.maps[w][x]] += pb.omega.measure[w];
      CHECK(Dist(acc) == k.row(x));
    }
  }
}

TEST_CASE("measure preservation") {
  ProbSpace space = mk_prob_space(FinSet::range(3), uniform(3));
  CHECK(is_measure_preserving(FinMap{1, 2, 0}, space).ok);
  Check bad = is_measure_preserving(FinMap{0, 0, 1}, space);
  CHECK(!bad.ok);
  CHECK(!bad.witness.empty());
  CHECK_THROWS_AS(mk_prob_space(FinSet::range(2), uniform(3)), Error);
}

TEST_CASE("sampling is seeded and matches frequencies") {
  Dist coin = uniform(2);
  SplitMix64 prng{42};
  std::string draws;
  for (int k = 0; k < 32; ++k) {
    auto [x, next] = sample(coin, prng);
    prng = next;
    draws += x == 0 ? 'H' : 'T';
  }
  draws += '\n';
  CHECK(draws == read_file(std::string(POLYDYN_GOLDEN_DIR) + "/coin_seed42.txt"));

  Dist d({q(1, 6), q(1, 3), q(1, 2)});
  SplitMix64 g{7};
  std::vector<double> counts(3, 0.0);
  const int n = 100000;
  for (int k = 0; k < n; ++k) {
    auto [x, next] = sample(d, g);
    g = next;
    counts[x] += 1.0;
  }
  CHECK(std::abs(counts[0] / n - 1.0 / 6) <= 0.01);
  CHECK(std::abs(counts[1] / n - 1.0 / 3) <= 0.01);
  CHECK(std::abs(counts[2] / n - 1.0 / 2) <= 0.01);
}

TEST_CASE("stationary distribution of a two-state chain") {
  // a = 1/3 leaves state 0, b = 1/4 leaves state 1; nu = (b, a) / (a + b).
  Kernel k({Dist({q(2, 3), q(1, 3)}), Dist({q(1, 4), q(3, 4)})}, 2);
  auto nu = stationary_distribution(k);
  REQUIRE(nu);
  CHECK((*nu)[0] == q(3, 7));
  CHECK((*nu)[1] == q(4, 7));
  CHECK(!stationary_distribution(identity_kernel(2)));
}

TEST_CASE("law reports serialize") {
  LawReport r("demo");
  r.add_cases(3);
  r.fail("flow", {{"t", "2"}});
  r.warn("vacuous");
  CHECK(!r.ok());
  CHECK(r.first_failure().find("flow") != std::string::npos);
  CHECK(r.to_json().find("\"demo\"") != std::string::npos);
  LawReport s("other");
  s.merge(r);
  CHECK(s.failures().size() == 1);
}
