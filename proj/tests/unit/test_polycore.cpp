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


#include "doctest.h"
#include "generators.hpp"
#include "polydyn/lens.hpp"
#include "polydyn/nested.hpp"

#include <map>
#include <set>

using namespace polydyn;
using polydyn::testing::Rng;

namespace {

// P2: positions {a, b}, p[a] = {u, v}, p[b] = {w}.
Polynomial p2() { return Polynomial::make(FinSet{"a", "b"}, {{"a", FinSet{"u", "v"}}, {"b", FinSet{"w"}}}); }

std::size_t power(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Independent count: sum over forward maps of prod_i |p[i]|^{|q[f(i)]|}.
std::size_t brute_lens_count(const Polynomial& p, const Polynomial& q) {
  std::size_t total = 0;
  std::vector<Index> f(p.num_positions(), 0);
  if (q.num_positions() == 0) return p.num_positions() == 0 ? 1 : 0;
  while (true) {
    std::size_t prod = 1;
    for (Index i = 0; i < f.size(); ++i) prod *= power(p.fiber(i).size(), q.fiber(f[i]).size());
    total += prod;
    std::size_t k = 0;
    while (k < f.size() && ++f[k] == q.num_positions()) f[k++] = 0;
    if (k == f.size()) break;
  }
  return total;
}

}  // namespace

TEST_CASE("finset keeps canonical order and rejects duplicates") {
  FinSet s{"b", "a", "c"};
  CHECK(s.labels() == std::vector<std::string>{"a", "b", "c"});
  CHECK(s.index_of("c") == 2);
  CHECK_THROWS_AS(FinSet({"x", "x"}), Error);
  try {
    FinSet({"x", "x"});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateLabel);
  }
  CHECK(FinSet::range(11).label(2) == "10");
}

TEST_CASE("tuple and list labels decode at top level only") {
  auto t = decode_tuple("(a,[b,c],(d,e))");
  REQUIRE(t);
  CHECK(*t == std::vector<std::string>{"a", "[b,c]", "(d,e)"});
  CHECK(!decode_tuple("(a,b"));
  CHECK(decode_list("[]")->empty());
}

TEST_CASE("polynomial construction") {
  Polynomial p = p2();
  CHECK(p.num_positions() == 2);
  CHECK(p.total_directions() == 3);
  CHECK(identity_polynomial().num_positions() == 1);
  Polynomial one = Polynomial::make(FinSet{"a"}, {{"a", FinSet{}}});
  CHECK(one.fiber(0).empty());
  try {
    Polynomial::make(FinSet{"a", "b"}, {{"a", FinSet{"u"}}});
    FAIL("expected MissingFiber");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingFiber);
  }
  try {
    Polynomial::make(FinSet{"a"}, {{"a", FinSet{"u"}}, {"z", FinSet{}}});
    FAIL("expected UnknownPosition");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownPosition);
  }
}

TEST_CASE("evaluation counts sum of powers") {
  FinSet x3{"x", "y", "z"};
  CHECK(eval_polynomial(p2(), x3).size() == 9 + 3);
  CHECK(eval_polynomial(identity_polynomial(), FinSet{"x", "y"}).size() == 2);
  CHECK(eval_polynomial(constant_polynomial(FinSet{"a"}), x3).size() == 1);
  Rng rng(7);
  for (int k = 0; k < 30; ++k) {
    Polynomial p = testing::random_polynomial(rng);
    FinSet x = testing::prefixed("x", testing::pick(rng, 0, 3));
    std::size_t expect = 0;
    for (const auto& f : p.fibers()) expect += power(x.size(), f.size());
    CHECK(eval_polynomial(p, x).size() == expect);
  }
}

TEST_CASE("tensor and composite shapes") {
  Polynomial t = tensor(p2(), p2());
  CHECK(t.num_positions() == 4);
  std::multiset<std::size_t> sizes;
  for (const auto& f : t.fibers()) sizes.insert(f.size());
  CHECK(sizes == std::multiset<std::size_t>{1, 2, 2, 4});
  CHECK(composite(p2(), identity_polynomial()).num_positions() == 2);
  FinSet s{"0", "1", "2"};
  Polynomial ps = composite(p2(), constant_polynomial(s));
  CHECK(ps.positions().size() == eval_polynomial(p2(), s).size());
  for (const auto& f : ps.fibers()) CHECK(f.empty());
}

TEST_CASE("sections") {
  CHECK(enumerate_sections(p2()).size() == 2);
  CHECK(enumerate_sections(identity_polynomial()).size() == 1);
  CHECK(enumerate_sections(Polynomial::make(FinSet{"a"}, {{"a", FinSet{}}})).empty());
  Rng rng(3);
  for (int k = 0; k < 30; ++k) {
    Polynomial p = testing::random_polynomial(rng);
    auto secs = enumerate_sections(p);
    CHECK(secs.size() == count_sections(p));
    for (const auto& s : secs) CHECK(is_section(p, s));
    for (std::size_t i = 1; i < secs.size(); ++i) CHECK(secs[i - 1].choice < secs[i].choice);
  }
  Section sigma = make_section(p2(), {{"a", "u"}, {"b", "w"}});
  CHECK(pull_section(FinMap{0, 0}, sigma) == std::vector<Index>{0, 0});
}

TEST_CASE("lens counting matches brute force") {
  Polynomial y = identity_polynomial();
  CHECK(enumerate_lenses(y, y).size() == 1);
  CHECK(enumerate_lenses(y, p2()).size() == 2);
  CHECK(enumerate_lenses(p2(), y).size() == count_sections(p2()));
  Rng rng(11);
  for (int k = 0; k < 40; ++k) {
    Polynomial p = testing::random_polynomial(rng, 3, 2);
    Polynomial q = testing::random_polynomial(rng, 3, 2);
    auto all = enumerate_lenses(p, q);
    CHECK(all.size() == brute_lens_count(p, q));
    CHECK(count_lenses(p, q) == all.size());
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(!(all[i - 1] == all[i]));
  }
  try {
    enumerate_lenses(monomial(FinSet::range(4), FinSet::range(3)), monomial(FinSet::range(4), FinSet::range(3)), 100);
    FAIL("expected EnumerationTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EnumerationTooLarge);
  }
}

TEST_CASE("explicit composition against a hand table") {
  Polynomial p = p2();
  Polynomial q = Polynomial::make(FinSet{"c"}, {{"c", FinSet{"x", "y"}}});
  Polynomial r = Polynomial::make(FinSet{"e"}, {{"e", FinSet{"z"}}});
  Lens f = Lens::make(p, q, {{"a", "c"}, {"b", "c"}}, {{"a", {{"x", "v"}, {"y", "u"}}}, {"b", {{"x", "w"}, {"y", "w"}}}});
  Lens g = Lens::make(q, r, {{"c", "e"}}, {{"c", {{"z", "y"}}}});
  Lens gf = compose_lenses(g, f);
  // z -> y -> u at a, z -> y -> w at b
  CHECK(gf == Lens::make(p, r, {{"a", "e"}, {"b", "e"}}, {{"a", {{"z", "u"}}}, {"b", {{"z", "w"}}}}));
  try {
    compose_lenses(f, g);
    FAIL("expected InterfaceMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InterfaceMismatch);
  }
}

TEST_CASE("category and bifunctor laws on random lenses") {
  Rng rng(2024);
  int triples = 0;
  for (int k = 0; k < 200; ++k) {
    Polynomial a = testing::random_polynomial(rng, 4, 3, 1);
    Polynomial b = testing::random_polynomial(rng, 4, 3, 1);
    Polynomial c = testing::random_polynomial(rng, 4, 3, 1);
    Polynomial d = testing::random_polynomial(rng, 4, 3, 1);
    auto f = testing::random_lens(rng, a, b);
    auto g = testing::random_lens(rng, b, c);
    auto h = testing::random_lens(rng, c, d);
    REQUIRE(f);
    REQUIRE(g);
    REQUIRE(h);
    CHECK(compose_lenses(*h, compose_lenses(*g, *f)) == compose_lenses(compose_lenses(*h, *g), *f));
    CHECK(compose_lenses(identity_lens(b), *f) == *f);
    CHECK(compose_lenses(*f, identity_lens(a)) == *f);
    CHECK(tensor_lenses(compose_lenses(*g, *f), compose_lenses(*h, *g)) ==
          compose_lenses(tensor_lenses(*g, *h), tensor_lenses(*f, *g)));
    ++triples;
  }
  CHECK(triples == 200);
}

TEST_CASE("unitors are mutually inverse") {
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    Polynomial p = testing::random_polynomial(rng);
    CHECK(compose_lenses(tensor_right_unitor(p), tensor_right_unitor_inv(p)) == identity_lens(p));
    CHECK(compose_lenses(tensor_right_unitor_inv(p), tensor_right_unitor(p)) ==
          identity_lens(tensor(p, identity_polynomial())));
    CHECK(compose_lenses(tensor_left_unitor(p), tensor_left_unitor_inv(p)) == identity_lens(p));
    CHECK(compose_lenses(composite_left_unitor(p), composite_left_unitor_inv(p)) == identity_lens(p));
    CHECK(compose_lenses(composite_right_unitor(p), composite_right_unitor_inv(p)) == identity_lens(p));
    CHECK(compose_lenses(composite_right_unitor_inv(p), composite_right_unitor(p)) ==
          identity_lens(composite(p, identity_polynomial())));
  }
}

TEST_CASE("internal hom") {
  Polynomial y = identity_polynomial();
  Polynomial hy = internal_hom(y, p2());
  CHECK(hy.num_positions() == 2);
  std::multiset<std::size_t> sizes;
  for (const auto& f : hy.fibers()) sizes.insert(f.size());
  CHECK(sizes == std::multiset<std::size_t>{1, 2});
  Polynomial one = constant_polynomial(FinSet::singleton());
  Polynomial h1 = internal_hom(p2(), one);
  CHECK(h1.num_positions() == 1);
  CHECK(h1.fiber(0).empty());
}

TEST_CASE("currying is a bijection on a tiny pool") {
  std::vector<Polynomial> pool{identity_polynomial(), p2(), monomial(FinSet{"a"}, FinSet{"x", "y"}),
                               constant_polynomial(FinSet{"k"}), monomial(FinSet{"a", "b"}, FinSet{"x"})};
  for (const auto& r : pool) {
    for (const auto& q : pool) {
      for (const auto& p : pool) {
        InternalHom hom = make_internal_hom(q, p);
        auto lhs = enumerate_lenses(tensor(r, q), p);
        auto rhs = enumerate_lenses(r, *hom.poly);
        REQUIRE(lhs.size() == rhs.size());
        for (const auto& f : lhs) CHECK(uncurry(curry(f, r, q, p, hom), r, q, p, hom) == f);
        for (const auto& g : rhs) CHECK(curry(uncurry(g, r, q, p, hom), r, q, p, hom) == g);
      }
    }
  }
}

TEST_CASE("nested polynomials") {
  Polynomial p = p2();
  NestedPoly over_y = nest_over_y(p);
  CHECK(over_y.base == identity_polynomial());
  NestedPoly id = identity_nesting(p);
  CHECK(id.n == identity_map(2));
  Polynomial y = identity_polynomial();
  std::map<std::string, std::string> m{{"(a,u)", "(*,*)"}, {"(a,v)", "(*,*)"}, {"(b,w)", "(*,*)"}};
  CHECK_NOTHROW(mk_nested(p, y, m, {{"a", "*"}, {"b", "*"}}));
  Polynomial b2 = Polynomial::make(FinSet{"k", "l"}, {{"k", FinSet{"e"}}, {"l", FinSet{"e"}}});
  std::map<std::string, std::string> bad{{"(a,u)", "(k,e)"}, {"(a,v)", "(l,e)"}, {"(b,w)", "(l,e)"}};
  try {
    mk_nested(p, b2, bad, {{"a", "k"}, {"b", "l"}});
    FAIL("expected SquareDoesNotCommute");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SquareDoesNotCommute);
    CHECK(std::string(e.what()).find("(a,v)") != std::string::npos);
  }
}
