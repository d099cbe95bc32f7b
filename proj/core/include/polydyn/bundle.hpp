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

#include <optional>
#include <vector>

#include "polydyn/nested.hpp"
#include "polydyn/random_system.hpp"

namespace polydyn {

/// Open system over p projecting onto an open system over b compatibly with
/// every pair of closures.
struct BundleSystem {
  OpenSystem top;
  OpenSystem base;
  FinMap proj;
  std::optional<Dist> metric_base;
};

/// proj . top(t, sigma) = base(t, varsigma) . proj for all t, sigma, varsigma.
LawReport check_bundle_squares(const OpenSystem& top, const OpenSystem& base, const FinMap& proj,
                               std::size_t cap = kDefaultCap);
/// Throws BundleSquareBroken, or MeasureNotPreserved when a base measure is
/// given and some base closure does not preserve it.
BundleSystem mk_bundle_system(OpenSystem top, OpenSystem base, FinMap proj, std::optional<Dist> metric_base = {},
                              std::size_t cap = kDefaultCap);

/// Same base; f is an open-system morphism of the tops commuting with proj.
Check check_bundle_morphism(const FinMap& f, const BundleSystem& from, const BundleSystem& to,
                            std::size_t cap = kDefaultCap);
/// (f_p, f_b): f_b a morphism of bases, f_p a morphism of tops with
/// proj_to . f_p = f_b . proj_from.
Check check_total_bundle_morphism(const TotalMorphism& m, const BundleSystem& from, const BundleSystem& to,
                                  std::size_t cap = kDefaultCap);

/// Replaces the base by its reindexing along chi : b -> c and re-verifies.
BundleSystem rebase_along_base_lens(const Lens& chi, const BundleSystem& bundle, std::size_t cap = kDefaultCap);
/// Reindexes the top along phi : p -> q and re-verifies.
BundleSystem reindex_bundle_top(const Lens& phi, const BundleSystem& bundle, std::size_t cap = kDefaultCap);

/// Forced lift at time t; throws NestingConditionFails if the cube or the
/// lifted flow square proj(top_u(w, d)) = base_u(lift(w, d)) fails.
Lift nesting_lift(const NestedPoly& nested, const BundleSystem& bundle, Index t);
CubeData cube_data(const BundleSystem& bundle, Index t);

struct NestedBundleSystem {
  BundleSystem bundle;
  NestedPoly nested;
  std::vector<Lift> lifts;  // one per structural time
};

NestedBundleSystem mk_nested_bundle(NestedPoly nested, BundleSystem bundle);

}  // namespace polydyn
