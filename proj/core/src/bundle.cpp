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


#include "polydyn/bundle.hpp"

#include <utility>

namespace polydyn {

LawReport check_bundle_squares(const OpenSystem& top, const OpenSystem& base, const FinMap& proj, std::size_t cap) {
  if (!(top.time() == base.time())) throw Error(ErrorKind::InterfaceMismatch, "top and base run on different times");
  if (proj.size() != top.num_states()) throw Error(ErrorKind::InterfaceMismatch, "projection is not total");
  for (Index x : proj) {
    if (x >= base.num_states()) throw Error(ErrorKind::InterfaceMismatch, "projection leaves the base states");
  }
  LawReport report("bundle-square");
  std::vector<Section> sigmas = enumerate_sections(top.interface(), cap);
  std::vector<Section> varsigmas = enumerate_sections(base.interface(), cap);
  require_within_cap(saturating_mul(sigmas.size(), varsigmas.size()), cap, "section pairs");
  if (sigmas.empty() || varsigmas.empty()) report.warn("no section pairs; bundle squares hold vacuously");
  for (Index t : top.time().structural_times()) {
    std::vector<FinMap> downs;
    for (const Section& vs : varsigmas) downs.push_back(compose_maps(closure_step(base, vs, t), proj));
    for (const Section& sigma : sigmas) {
      FinMap up = compose_maps(proj, closure_step(top, sigma, t));
      for (std::size_t k = 0; k < varsigmas.size(); ++k) {
        report.add_cases();
        for (Index w = 0; w < up.size(); ++w) {
          if (up[w] != downs[k][w]) {
            report.fail("bundle-square", {{"t", top.time().label(t)},
                                          {"section", describe(top.interface(), sigma)},
                                          {"base-section", describe(base.interface(), varsigmas[k])},
                                          {"state", top.states().label(w)}});
            break;
          }
        }
      }
    }
  }
  return report;
}

BundleSystem mk_bundle_system(OpenSystem top, OpenSystem base, FinMap proj, std::optional<Dist> metric_base,
                              std::size_t cap) {
  LawReport report = check_bundle_squares(top, base, proj, cap);
  if (!report.ok()) throw Error(ErrorKind::BundleSquareBroken, report.first_failure());
  if (metric_base) {
    LawReport m = check_open_metric(base, *metric_base, cap);
    if (!m.ok()) throw Error(ErrorKind::MeasureNotPreserved, m.first_failure());
  }
  return BundleSystem{std::move(top), std::move(base), std::move(proj), std::move(metric_base)};
}

Check check_bundle_morphism(const FinMap& f, const BundleSystem& from, const BundleSystem& to, std::size_t cap) {
  if (!(from.base == to.base)) throw Error(ErrorKind::InterfaceMismatch, "bundles live over different base systems");
  if (Check c = check_open_morphism(f, from.top, to.top, cap); !c) return c;
  for (Index w = 0; w < f.size(); ++w) {
    if (to.proj[f[w]] != from.proj[w]) return Check::fail("projection mismatch at state=" + from.top.states().label(w));
  }
  return Check::pass();
}

Check check_total_bundle_morphism(const TotalMorphism& m, const BundleSystem& from, const BundleSystem& to,
                                  std::size_t cap) {
  if (m.state_cod != to.top.num_states() || m.base_cod != to.base.num_states()) {
    return Check::fail("morphism does not land in the target bundle");
  }
  if (Check c = check_open_morphism(m.base_map, from.base, to.base, cap); !c) return Check::fail("base: " + c.witness);
  if (Check c = check_open_morphism(m.state_map, from.top, to.top, cap); !c) return Check::fail("top: " + c.witness);
  for (Index w = 0; w < m.state_map.size(); ++w) {
    if (to.proj[m.state_map[w]] != m.base_map[from.proj[w]]) {
      return Check::fail("projection square fails at state=" + from.top.states().label(w));
    }
  }
  return Check::pass();
}

BundleSystem rebase_along_base_lens(const Lens& chi, const BundleSystem& bundle, std::size_t cap) {
  return mk_bundle_system(bundle.top, reindex_open(chi, bundle.base), bundle.proj, bundle.metric_base, cap);
}

BundleSystem reindex_bundle_top(const Lens& phi, const BundleSystem& bundle, std::size_t cap) {
  return mk_bundle_system(reindex_open(phi, bundle.top), bundle.base, bundle.proj, bundle.metric_base, cap);
}

CubeData cube_data(const BundleSystem& bundle, Index t) {
  return CubeData{bundle.top.out(t), bundle.base.out(t), bundle.proj};
}

Lift nesting_lift(const NestedPoly& nested, const BundleSystem& bundle, Index t) {
  if (!(nested.top == bundle.top.interface()) || !(nested.base == bundle.base.interface())) {
    throw Error(ErrorKind::InterfaceMismatch, "nesting does not match the bundle interfaces");
  }
  Lift lift = nesting_cube_lift(nested, cube_data(bundle, t));
  for (Index w = 0; w < lift.size(); ++w) {
    for (Index d = 0; d < lift[w].size(); ++d) {
      Index up = bundle.proj[bundle.top.update(t, w, d)];
      Index down = bundle.base.update(t, lift[w][d].pos, lift[w][d].dir);
      if (up != down) {
        throw Error(ErrorKind::NestingConditionFails,
                    "lifted flow square fails at t=" + bundle.top.time().label(t) + ", state=" +
                        bundle.top.states().label(w) + ", direction=" +
                        nested.top.fiber(bundle.top.out(t)[w]).label(d));
      }
    }
  }
  return lift;
}

NestedBundleSystem mk_nested_bundle(NestedPoly nested, BundleSystem bundle) {
  std::vector<Lift> lifts;
  for (Index t : bundle.top.time().structural_times()) lifts.push_back(nesting_lift(nested, bundle, t));
  return NestedBundleSystem{std::move(bundle), std::move(nested), std::move(lifts)};
}

}  // namespace polydyn
