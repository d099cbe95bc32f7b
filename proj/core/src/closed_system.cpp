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


#include "polydyn/closed_system.hpp"

#include <utility>

namespace polydyn {

namespace {

void require_endomap(const FinMap& f, std::size_t n, const std::string& what) {
  if (f.size() != n) throw Error(ErrorKind::MissingFiber, what + " is not total on the states");
  for (Index x : f) {
    if (x >= n) throw Error(ErrorKind::UnknownLabel, what + " leaves the state set");
  }
}

}  // namespace

FinMap map_power(const FinMap& f, std::size_t n) {
  FinMap result = identity_map(f.size());
  FinMap base = f;
  while (n > 0) {
    if (n & 1U) result = compose_maps(base, result);
    base = compose_maps(base, base);
    n >>= 1U;
  }
  return result;
}

ClosedSystem ClosedSystem::unchecked(TimeMonoid time, FinSet states, std::vector<FinMap> stored) {
  if (time.is_sampled()) throw Error(ErrorKind::UnsupportedTime, "finite systems cannot use sampled real time");
  if (stored.size() != time.structural_times().size()) {
    throw Error(ErrorKind::MissingFiber, "expected " + std::to_string(time.structural_times().size()) +
                                             " action maps, got " + std::to_string(stored.size()));
  }
  for (std::size_t k = 0; k < stored.size(); ++k) require_endomap(stored[k], states.size(), "action");
  ClosedSystem sys;
  sys.time_ = std::move(time);
  sys.states_ = std::move(states);
  sys.stored_ = std::move(stored);
  return sys;
}

FinMap ClosedSystem::action(Index t) const {
  if (time_.is_discrete()) return map_power(stored_.at(0), t);
  return stored_.at(t);
}

ClosedSystem mk_closed(TimeMonoid time, FinSet states, std::vector<FinMap> stored) {
  ClosedSystem sys = ClosedSystem::unchecked(std::move(time), std::move(states), std::move(stored));
  LawReport report = check_flow_closed(sys);
  if (!report.ok()) throw Error(ErrorKind::FlowViolation, report.first_failure());
  return sys;
}

LawReport check_flow_closed(const ClosedSystem& sys) {
  LawReport report("flow");
  const TimeMonoid& time = sys.time();
  const FinSet& states = sys.states();
  std::vector<Index> times = time.law_times();
  std::vector<FinMap> act;
  act.reserve(times.size());
  if (time.is_discrete()) {
    // Iterates built one step at a time; action() uses repeated squaring.
    FinMap cur = identity_map(states.size());
    for (Index t : times) {
      report.add_cases();
      FinMap stored = sys.action(t);
      for (Index x = 0; x < states.size(); ++x) {
        if (stored[x] != cur[x]) {
          report.fail("discrete-determination", {{"t", time.label(t)}, {"state", states.label(x)}});
          break;
        }
      }
      act.push_back(cur);
      cur = compose_maps(sys.stored().at(0), cur);
    }
  } else {
    for (Index t : times) act.push_back(sys.action(t));
  }
  report.add_cases();
  for (Index x = 0; x < states.size(); ++x) {
    if (act[time.zero()][x] != x) {
      report.fail("identity", {{"t", time.label(time.zero())}, {"state", states.label(x)}});
      break;
    }
  }
  for (Index s : times) {
    for (Index t : times) {
      Index st = time.add(s, t);
      if (st >= act.size()) continue;
      report.add_cases();
      for (Index x = 0; x < states.size(); ++x) {
        Index lhs = act[st][x];
        Index rhs = act[s][act[t][x]];
        if (lhs != rhs) {
          report.fail("composition", {{"s", time.label(s)},
                                      {"t", time.label(t)},
                                      {"state", states.label(x)},
                                      {"lhs", states.label(lhs)},
                                      {"rhs", states.label(rhs)}});
          break;
        }
      }
    }
  }
  return report;
}

Check check_closed_morphism(const FinMap& f, const ClosedSystem& a, const ClosedSystem& b) {
  if (!(a.time() == b.time())) throw Error(ErrorKind::InterfaceMismatch, "systems run on different time monoids");
  if (f.size() != a.states().size()) throw Error(ErrorKind::InterfaceMismatch, "map is not total on the source states");
  for (Index t : a.time().structural_times()) {
    FinMap at = a.action(t);
    FinMap bt = b.action(t);
    for (Index x = 0; x < f.size(); ++x) {
      if (f[at[x]] != bt.at(f[x])) {
        return Check::fail("t=" + a.time().label(t) + ", state=" + a.states().label(x));
      }
    }
  }
  return Check::pass();
}

}  // namespace polydyn
