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


#include "polydyn/random_system.hpp"

#include <utility>

namespace polydyn {

namespace {

void require_map(const FinMap& f, std::size_t dom, std::size_t cod, const std::string& what) {
  if (f.size() != dom) throw Error(ErrorKind::InterfaceMismatch, what + " is not total");
  for (Index y : f) {
    if (y >= cod) throw Error(ErrorKind::InterfaceMismatch, what + " leaves its codomain");
  }
}

}  // namespace

MetricSystem mk_metric(ClosedSystem closed, Dist measure) {
  ProbSpace space = mk_prob_space(closed.states(), std::move(measure));
  for (Index t : closed.time().structural_times()) {
    Check c = is_measure_preserving(closed.action(t), space);
    if (!c) throw Error(ErrorKind::MeasureNotPreserved, "t=" + closed.time().label(t) + ": " + c.witness);
  }
  return MetricSystem{std::move(closed), std::move(space)};
}

Check check_metric_morphism(const FinMap& phi, const MetricSystem& a, const MetricSystem& b) {
  if (phi.size() != a.closed.states().size()) return Check::fail("map is not total on the source");
  for (Index y : phi) {
    if (y >= b.closed.states().size()) return Check::fail("map leaves the target");
  }
  if (Check c = check_closed_morphism(phi, a.closed, b.closed); !c) return Check::fail("flow: " + c.witness);
  Dist pushed = pushforward(phi, a.space.measure, b.space.carrier.size());
  for (Index y = 0; y < pushed.size(); ++y) {
    if (pushed[y] != b.space.measure[y]) {
      return Check::fail("measure: weight of '" + b.space.carrier.label(y) + "' is " + to_string(pushed[y]) +
                         ", expected " + to_string(b.space.measure[y]));
    }
  }
  return Check::pass();
}

ClosedRDS mk_closed_rds(MetricSystem base, ClosedSystem total, FinMap proj) {
  require_map(proj, total.states().size(), base.closed.states().size(), "projection");
  if (!(total.time() == base.closed.time())) throw Error(ErrorKind::InterfaceMismatch, "total and base run on different times");
  for (Index t : total.time().structural_times()) {
    FinMap up = total.action(t);
    FinMap down = base.closed.action(t);
    for (Index s = 0; s < proj.size(); ++s) {
      if (proj[up[s]] != down[proj[s]]) {
        throw Error(ErrorKind::BundleSquareBroken, "t=" + total.time().label(t) + ", state=" + total.states().label(s));
      }
    }
  }
  return ClosedRDS{std::move(base), std::move(total), std::move(proj)};
}

LawReport check_rds_square(const OpenSystem& sys, const MetricSystem& base, const FinMap& proj, std::size_t cap) {
  require_map(proj, sys.num_states(), base.closed.states().size(), "projection");
  if (!(sys.time() == base.closed.time())) throw Error(ErrorKind::InterfaceMismatch, "system and base run on different times");
  LawReport report("rds-square");
  std::vector<Section> sections = enumerate_sections(sys.interface(), cap);
  if (sections.empty()) report.warn("interface has no sections; bundle square holds vacuously");
  for (Index t : sys.time().structural_times()) {
    FinMap down = base.closed.action(t);
    for (const Section& sigma : sections) {
      report.add_cases();
      FinMap up = closure_step(sys, sigma, t);
      for (Index s = 0; s < proj.size(); ++s) {
        if (proj[up[s]] != down[proj[s]]) {
          report.fail("bundle-square", {{"t", sys.time().label(t)},
                                        {"section", describe(sys.interface(), sigma)},
                                        {"state", sys.states().label(s)}});
          break;
        }
      }
    }
  }
  return report;
}

OpenRDS mk_open_rds(OpenSystem sys, MetricSystem base, FinMap proj, std::size_t cap) {
  LawReport report = check_rds_square(sys, base, proj, cap);
  if (!report.ok()) throw Error(ErrorKind::BundleSquareBroken, report.first_failure());
  return OpenRDS{std::move(sys), std::move(base), std::move(proj)};
}

ClosedRDS closure_rds(const OpenRDS& rds, const Section& sigma) {
  return mk_closed_rds(rds.base, closure(rds.sys, sigma), rds.proj);
}

Check check_rds_morphism(const FinMap& f, const OpenRDS& from, const OpenRDS& to, std::size_t cap) {
  if (!(from.base.closed == to.base.closed) || !(from.base.space.measure == to.base.space.measure)) {
    throw Error(ErrorKind::InterfaceMismatch, "systems live over different bases");
  }
  if (Check c = check_open_morphism(f, from.sys, to.sys, cap); !c) return c;
  for (Index x = 0; x < f.size(); ++x) {
    if (to.proj[f[x]] != from.proj[x]) return Check::fail("projection mismatch at state=" + from.sys.states().label(x));
  }
  return Check::pass();
}

OpenRDS reindex_rds(const Lens& phi, const OpenRDS& rds, std::size_t cap) {
  return mk_open_rds(reindex_open(phi, rds.sys), rds.base, rds.proj, cap);
}

OpenRDS rebase_rds(const FinMap& phi, const MetricSystem& target, const OpenRDS& rds, std::size_t cap) {
  if (Check c = check_metric_morphism(phi, rds.base, target); !c) throw Error(ErrorKind::NotAMetricMorphism, c.witness);
  return mk_open_rds(rds.sys, target, compose_maps(phi, rds.proj), cap);
}

LawReport check_open_metric(const OpenSystem& sys, const Dist& measure, std::size_t cap) {
  ProbSpace space = mk_prob_space(sys.states(), measure);
  LawReport report("open-metric");
  std::vector<Section> sections = enumerate_sections(sys.interface(), cap);
  if (sections.empty()) report.warn("interface has no sections; measure preservation holds vacuously");
  for (Index t : sys.time().structural_times()) {
    for (const Section& sigma : sections) {
      report.add_cases();
      Check c = is_measure_preserving(closure_step(sys, sigma, t), space);
      if (!c) {
        report.fail("measure-preserving",
                    {{"t", sys.time().label(t)}, {"section", describe(sys.interface(), sigma)}, {"detail", c.witness}});
      }
    }
  }
  return report;
}

OpenMetricSystem mk_open_metric(OpenSystem sys, Dist measure, std::size_t cap) {
  LawReport report = check_open_metric(sys, measure, cap);
  if (!report.ok()) throw Error(ErrorKind::MeasureNotPreserved, report.first_failure());
  return OpenMetricSystem{std::move(sys), std::move(measure)};
}

TotalMorphism identity_total_morphism(std::size_t states, std::size_t base_states) {
  return TotalMorphism{identity_map(states), states, identity_map(base_states), base_states};
}

TotalMorphism compose_total_morphisms(const TotalMorphism& second, const TotalMorphism& first) {
  if (first.state_cod != second.state_map.size() || first.base_cod != second.base_map.size()) {
    throw Error(ErrorKind::ChainMismatch, "codomain of the first morphism is not the domain of the second");
  }
  return TotalMorphism{compose_maps(second.state_map, first.state_map), second.state_cod,
                       compose_maps(second.base_map, first.base_map), second.base_cod};
}

Check check_total_rds_morphism(const TotalMorphism& m, const OpenRDS& from, const OpenRDS& to, std::size_t cap) {
  if (m.state_cod != to.sys.num_states() || m.base_cod != to.base.closed.states().size()) {
    return Check::fail("morphism does not land in the target system");
  }
  if (Check c = check_metric_morphism(m.base_map, from.base, to.base); !c) return Check::fail("base: " + c.witness);
  OpenRDS moved{from.sys, to.base, compose_maps(m.base_map, from.proj)};
  return check_rds_morphism(m.state_map, moved, to, cap);
}

}  // namespace polydyn
