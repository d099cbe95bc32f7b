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
#include <utility>
#include <vector>

#include "polydyn/error.hpp"
#include "polydyn/polynomial.hpp"

namespace polydyn {

/// A point of a total space: position index and direction index inside its fiber.
struct Direction {
  Index pos = 0;
  Index dir = 0;
  friend bool operator==(const Direction&, const Direction&) = default;
};

/// p nested over b: m sends the total space of p to the total space of b,
/// n sends positions, and the square commutes (m(i,d).pos == n(i)).
struct NestedPoly {
  Polynomial top;
  Polynomial base;
  std::vector<std::vector<Direction>> m;  // m[i][d]
  FinMap n;
};

/// Throws SquareDoesNotCommute with the offending (i,d).
NestedPoly mk_nested(Polynomial top, Polynomial base, std::vector<std::vector<Direction>> m, FinMap n);

/// Label-keyed form: m maps "(i,d)" to "(k,e)", n maps i to k.
NestedPoly mk_nested(const Polynomial& top, const Polynomial& base, const std::map<std::string, std::string>& m,
                     const std::map<std::string, std::string>& n);

/// p over y. Requires nothing; always commutes.
NestedPoly nest_over_y(const Polynomial& p);
NestedPoly identity_nesting(const Polynomial& p);

/// lift[w][d] = (x, e): a base state and a direction of b at theta_o(x).
using Lift = std::vector<std::vector<Direction>>;

/// Output data of a bundle at one time, as seen by the nesting cube.
struct CubeData {
  const FinMap& top_out;   // w -> p(1)
  const FinMap& base_out;  // x -> b(1)
  const FinMap& proj;      // w -> x
};

/// The forced lift (w, d) |-> (proj(w), e) with (k, e) = m(top_out(w), d).
/// Throws NestingConditionFails unless k = base_out(proj(w)) for every (w, d)
/// and n(top_out(w)) = base_out(proj(w)) for every w.
Lift nesting_cube_lift(const NestedPoly& nested, const CubeData& data);
/// Whether a candidate lift makes the cube commute.
Check check_lift_cube(const NestedPoly& nested, const CubeData& data, const Lift& candidate);

}  // namespace polydyn
