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


#include "polydyn/nested.hpp"

#include "polydyn/error.hpp"

namespace polydyn {

NestedPoly mk_nested(Polynomial top, Polynomial base, std::vector<std::vector<Direction>> m, FinMap n) {
  if (n.size() != top.num_positions() || m.size() != top.num_positions()) {
    throw Error(ErrorKind::MissingFiber, "nesting maps do not cover the top polynomial");
  }
  for (Index i = 0; i < n.size(); ++i) {
    if (n[i] >= base.num_positions()) throw Error(ErrorKind::UnknownPosition, "n leaves the base positions");
    if (m[i].size() != top.fiber(i).size()) {
      throw Error(ErrorKind::MissingFiber, "m is not total over '" + top.positions().label(i) + "'");
    }
    for (Index d = 0; d < m[i].size(); ++d) {
      const Direction& to = m[i][d];
      if (to.pos >= base.num_positions() || to.dir >= base.fiber(to.pos).size()) {
        throw Error(ErrorKind::UnknownPosition, "m leaves the base total space");
      }
      if (to.pos != n[i]) {
        throw Error(ErrorKind::SquareDoesNotCommute,
                    "at " + encode_pair(top.positions().label(i), top.fiber(i).label(d)) + ": m lands over '" +
                        base.positions().label(to.pos) + "' but n gives '" + base.positions().label(n[i]) + "'");
      }
    }
  }
  return NestedPoly{std::move(top), std::move(base), std::move(m), std::move(n)};
}

NestedPoly mk_nested(const Polynomial& top, const Polynomial& base, const std::map<std::string, std::string>& m,
                     const std::map<std::string, std::string>& n) {
  FinMap nn(top.num_positions());
  std::vector<std::vector<Direction>> mm(top.num_positions());
  for (Index i = 0; i < top.num_positions(); ++i) {
    const std::string& pos = top.positions().label(i);
    auto it = n.find(pos);
    if (it == n.end()) throw Error(ErrorKind::MissingFiber, "n has no value at '" + pos + "'");
    nn[i] = base.positions().index_of(it->second);
    for (Index d = 0; d < top.fiber(i).size(); ++d) {
      std::string key = encode_pair(pos, top.fiber(i).label(d));
      auto mt = m.find(key);
      if (mt == m.end()) throw Error(ErrorKind::MissingFiber, "m has no value at " + key);
      auto parts = decode_tuple(mt->second);
      if (!parts || parts->size() != 2) throw Error(ErrorKind::UnknownLabel, "m value '" + mt->second + "' is not a pair");
      Index k = base.positions().index_of((*parts)[0]);
      mm[i].push_back(Direction{k, base.fiber(k).index_of((*parts)[1])});
    }
  }
  return mk_nested(top, base, std::move(mm), std::move(nn));
}

NestedPoly nest_over_y(const Polynomial& p) {
  std::vector<std::vector<Direction>> m(p.num_positions());
  for (Index i = 0; i < p.num_positions(); ++i) m[i].assign(p.fiber(i).size(), Direction{0, 0});
  return mk_nested(p, identity_polynomial(), std::move(m), FinMap(p.num_positions(), 0));
}

NestedPoly identity_nesting(const Polynomial& p) {
  std::vector<std::vector<Direction>> m(p.num_positions());
  for (Index i = 0; i < p.num_positions(); ++i)
    for (Index d = 0; d < p.fiber(i).size(); ++d) m[i].push_back(Direction{i, d});
  return mk_nested(p, p, std::move(m), identity_map(p.num_positions()));
}

Lift nesting_cube_lift(const NestedPoly& nested, const CubeData& data) {
  const Polynomial& p = nested.top;
  const Polynomial& b = nested.base;
  Lift lift(data.top_out.size());
  for (Index w = 0; w < data.top_out.size(); ++w) {
    const Index i = data.top_out[w];
    const Index x = data.proj.at(w);
    const Index k = data.base_out.at(x);
    if (nested.n.at(i) != k) {
      throw Error(ErrorKind::NestingConditionFails, "state #" + std::to_string(w) + ": n sends '" + p.positions().label(i) +
                                                        "' to '" + b.positions().label(nested.n[i]) +
                                                        "' but the base outputs '" + b.positions().label(k) + "'");
    }
    for (Index d = 0; d < p.fiber(i).size(); ++d) {
      const Direction& to = nested.m[i][d];
      if (to.pos != k) {
        throw Error(ErrorKind::NestingConditionFails,
                    "state #" + std::to_string(w) + ", direction '" + p.fiber(i).label(d) + "': m lands over '" +
                        b.positions().label(to.pos) + "' but the base outputs '" + b.positions().label(k) + "'");
      }
      lift[w].push_back(Direction{x, to.dir});
    }
  }
  return lift;
}

Check check_lift_cube(const NestedPoly& nested, const CubeData& data, const Lift& candidate) {
  if (candidate.size() != data.top_out.size()) return Check::fail("lift is not total");
  for (Index w = 0; w < candidate.size(); ++w) {
    const Index i = data.top_out[w];
    if (candidate[w].size() != nested.top.fiber(i).size()) return Check::fail("lift is not total at state #" + std::to_string(w));
    for (Index d = 0; d < candidate[w].size(); ++d) {
      const Direction& got = candidate[w][d];
      const Direction& want = nested.m[i][d];
      if (got.pos != data.proj.at(w)) return Check::fail("front face fails at state #" + std::to_string(w));
      if (data.base_out.at(got.pos) != want.pos || got.dir != want.dir) {
        return Check::fail("top face fails at state #" + std::to_string(w) + ", direction #" + std::to_string(d));
      }
    }
  }
  return Check::pass();
}

}  // namespace polydyn
