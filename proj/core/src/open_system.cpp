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


#include "polydyn/open_system.hpp"

#include <utility>

namespace polydyn {

namespace {

std::shared_ptr<const Polynomial> share(const Polynomial& p) { return std::make_shared<const Polynomial>(p); }

Witness section_witness(const Polynomial& p, const Section& sigma) { return {{"section", describe(p, sigma)}}; }

}  // namespace

OpenSystem OpenSystem::unchecked(std::shared_ptr<const Polynomial> interface, TimeMonoid time, FinSet states,
                                 std::vector<FinMap> out, std::vector<std::vector<FinMap>> upd) {
  if (time.is_sampled()) throw Error(ErrorKind::UnsupportedTime, "finite open systems cannot use sampled real time");
  const std::size_t slots = time.structural_times().size();
  if (out.size() != slots || upd.size() != slots) {
    throw Error(ErrorKind::MissingFiber, "expected output and update tables for " + std::to_string(slots) + " times");
  }
  const Polynomial& p = *interface;
  const std::size_t n = states.size();
  for (std::size_t k = 0; k < slots; ++k) {
    if (out[k].size() != n || upd[k].size() != n) throw Error(ErrorKind::MissingFiber, "output or update is not total on the states");
    for (Index s = 0; s < n; ++s) {
      if (out[k][s] >= p.num_positions()) throw Error(ErrorKind::UnknownPosition, "output of '" + states.label(s) + "' is not a position");
      if (upd[k][s].size() != p.fiber(out[k][s]).size()) {
        throw Error(ErrorKind::MissingFiber, "update at '" + states.label(s) + "' does not cover the fiber over its output");
      }
      for (Index x : upd[k][s]) {
        if (x >= n) throw Error(ErrorKind::UnknownLabel, "update at '" + states.label(s) + "' leaves the state set");
      }
    }
  }
  OpenSystem sys;
  sys.interface_ = std::move(interface);
  sys.time_ = std::move(time);
  sys.states_ = std::move(states);
  sys.out_ = std::move(out);
  sys.upd_ = std::move(upd);
  return sys;
}

bool operator==(const OpenSystem& a, const OpenSystem& b) {
  return *a.interface_ == *b.interface_ && a.time_ == b.time_ && a.states_ == b.states_ && a.out_ == b.out_ &&
         a.upd_ == b.upd_;
}

OpenSystem mk_open_discrete(const Polynomial& p, FinSet states, FinMap out, std::vector<FinMap> upd) {
  return OpenSystem::unchecked(share(p), TimeMonoid::discrete(), std::move(states), {std::move(out)}, {std::move(upd)});
}

OpenSystem mk_open(const Polynomial& p, TimeMonoid time, FinSet states, std::vector<FinMap> out,
                   std::vector<std::vector<FinMap>> upd, std::size_t cap) {
  OpenSystem sys = OpenSystem::unchecked(share(p), std::move(time), std::move(states), std::move(out), std::move(upd));
  if (!sys.time().is_discrete()) {
    LawReport report = check_flow_open(sys, cap);
    if (!report.ok()) throw Error(ErrorKind::FlowViolation, report.first_failure());
  }
  return sys;
}

FinMap closure_step(const OpenSystem& sys, const Section& sigma, Index t) {
  const FinMap& out = sys.out(t);
  const auto& upd = sys.upd(t);
  FinMap step(sys.num_states());
  for (Index s = 0; s < step.size(); ++s) step[s] = upd[s][sigma.choice.at(out[s])];
  return step;
}

ClosedSystem closure_unchecked(const OpenSystem& sys, const Section& sigma) {
  if (!is_section(sys.interface(), sigma)) throw Error(ErrorKind::InterfaceMismatch, "not a section of the interface");
  std::vector<FinMap> stored;
  for (Index t : sys.time().structural_times()) stored.push_back(closure_step(sys, sigma, t));
  return ClosedSystem::unchecked(sys.time(), sys.states(), std::move(stored));
}

ClosedSystem closure(const OpenSystem& sys, const Section& sigma) {
  ClosedSystem c = closure_unchecked(sys, sigma);
  LawReport report = check_flow_closed(c);
  if (!report.ok()) {
    throw Error(ErrorKind::FlowViolation, "section " + describe(sys.interface(), sigma) + ": " + report.first_failure());
  }
  return c;
}

LawReport check_flow_open(const OpenSystem& sys, std::size_t cap) {
  LawReport report("flow-open");
  std::vector<Section> sections = enumerate_sections(sys.interface(), cap);
  if (sections.empty()) {
    report.warn("interface has no sections; flow condition holds vacuously");
    return report;
  }
  for (const Section& sigma : sections) {
    LawReport one = check_flow_closed(closure_unchecked(sys, sigma));
    report.add_cases(one.cases());
    for (const auto& f : one.failures()) {
      Witness w = section_witness(sys.interface(), sigma);
      w.insert(w.end(), f.witness.begin(), f.witness.end());
      report.fail(f.law, std::move(w));
    }
  }
  return report;
}

Check check_open_morphism(const FinMap& f, const OpenSystem& from, const OpenSystem& to, std::size_t cap) {
  if (!(from.interface() == to.interface())) throw Error(ErrorKind::InterfaceMismatch, "systems live on different interfaces");
  if (!(from.time() == to.time())) throw Error(ErrorKind::InterfaceMismatch, "systems run on different time monoids");
  if (f.size() != from.num_states()) throw Error(ErrorKind::InterfaceMismatch, "map is not total on the source states");
  for (Index y : f) {
    if (y >= to.num_states()) throw Error(ErrorKind::InterfaceMismatch, "map leaves the target states");
  }
  std::vector<Section> sections = enumerate_sections(from.interface(), cap);
  for (Index t : from.time().structural_times()) {
    const FinMap& a = from.out(t);
    const FinMap& b = to.out(t);
    for (Index x = 0; x < f.size(); ++x) {
      if (b[f[x]] != a[x]) {
        return Check::fail("output mismatch at t=" + from.time().label(t) + ", state=" + from.states().label(x));
      }
    }
    for (const Section& sigma : sections) {
      FinMap lhs = compose_maps(f, closure_step(from, sigma, t));
      FinMap rhs = compose_maps(closure_step(to, sigma, t), f);
      for (Index x = 0; x < f.size(); ++x) {
        if (lhs[x] != rhs[x]) {
          return Check::fail("square fails at t=" + from.time().label(t) + ", section " +
                             describe(from.interface(), sigma) + ", state=" + from.states().label(x));
        }
      }
    }
  }
  return Check::pass();
}

OpenSystem reindex_open(const Lens& phi, const OpenSystem& sys) {
  if (!(phi.dom() == sys.interface())) throw Error(ErrorKind::InterfaceMismatch, "lens domain is not the system interface");
  std::vector<FinMap> out;
  std::vector<std::vector<FinMap>> upd;
  for (std::size_t k = 0; k < sys.out_table().size(); ++k) {
    const FinMap& o = sys.out_table()[k];
    const auto& u = sys.upd_table()[k];
    out.push_back(compose_maps(phi.fwd(), o));
    std::vector<FinMap> nu(sys.num_states());
    for (Index s = 0; s < nu.size(); ++s) nu[s] = compose_maps(u[s], phi.bwd()[o[s]]);
    upd.push_back(std::move(nu));
  }
  return OpenSystem::unchecked(phi.cod_ptr(), sys.time(), sys.states(), std::move(out), std::move(upd));
}

OpenSystem tensor_systems(const OpenSystem& a, const OpenSystem& b) {
  if (!(a.time() == b.time())) throw Error(ErrorKind::InterfaceMismatch, "systems run on different time monoids");
  auto pq = share(tensor(a.interface(), b.interface()));
  FinSet states = product(a.states(), b.states());
  std::vector<FinMap> out;
  std::vector<std::vector<FinMap>> upd;
  for (std::size_t k = 0; k < a.out_table().size(); ++k) {
    FinMap o(states.size());
    std::vector<FinMap> u(states.size());
    for (Index x = 0; x < a.num_states(); ++x) {
      for (Index y = 0; y < b.num_states(); ++y) {
        Index xy = product_index(states, a.states(), b.states(), x, y);
        Index i = a.out_table()[k][x];
        Index j = b.out_table()[k][y];
        Index ij = product_index(pq->positions(), a.interface().positions(), b.interface().positions(), i, j);
        o[xy] = ij;
        const FinSet& fib = pq->fiber(ij);
        u[xy].resize(fib.size());
        for (Index d = 0; d < a.interface().fiber(i).size(); ++d) {
          for (Index e = 0; e < b.interface().fiber(j).size(); ++e) {
            Index de = product_index(fib, a.interface().fiber(i), b.interface().fiber(j), d, e);
            u[xy][de] = product_index(states, a.states(), b.states(), a.upd_table()[k][x][d], b.upd_table()[k][y][e]);
          }
        }
      }
    }
    out.push_back(std::move(o));
    upd.push_back(std::move(u));
  }
  return OpenSystem::unchecked(std::move(pq), a.time(), std::move(states), std::move(out), std::move(upd));
}

OpenSystem open_from_closed(const ClosedSystem& c) {
  std::vector<FinMap> out;
  std::vector<std::vector<FinMap>> upd;
  for (const FinMap& act : c.stored()) {
    out.emplace_back(c.states().size(), 0);
    std::vector<FinMap> u(c.states().size());
    for (Index s = 0; s < u.size(); ++s) u[s] = {act[s]};
    upd.push_back(std::move(u));
  }
  return OpenSystem::unchecked(share(identity_polynomial()), c.time(), c.states(), std::move(out), std::move(upd));
}

ClosedSystem closed_from_open_y(const OpenSystem& sys) {
  if (!(sys.interface() == identity_polynomial())) throw Error(ErrorKind::InterfaceMismatch, "interface is not y");
  return closure_unchecked(sys, Section{{0}});
}

Policy section_policy(const Section& sigma) {
  return Policy{"section", [sigma](std::size_t, Index, Index position, SplitMix64&) { return sigma.choice.at(position); }};
}

Policy uniform_policy(const Polynomial& p) {
  auto shared = share(p);
  return Policy{"uniform", [shared](std::size_t, Index, Index position, SplitMix64& prng) -> Index {
                  std::size_t n = shared->fiber(position).size();
                  if (n == 0) throw Error(ErrorKind::PolicyOutOfFiber, "empty fiber at the current position");
                  auto [x, next] = sample(uniform(n), prng);
                  prng = next;
                  return x;
                }};
}

Policy distribution_policy(std::vector<Dist> per_position) {
  return Policy{"distribution", [rows = std::move(per_position)](std::size_t, Index, Index position, SplitMix64& prng) {
                  auto [x, next] = sample(rows.at(position), prng);
                  prng = next;
                  return x;
                }};
}

Index simulation_step(const TimeMonoid& time) {
  if (time.is_discrete()) return 1;
  if (time.is_table()) {
    if (auto one = time.elements().find("1")) return *one;
  }
  throw Error(ErrorKind::UnsupportedTime, "time monoid has no unit step to simulate with");
}

Trajectory simulate_open(const OpenSystem& sys, Index x0, const Policy& policy, std::size_t steps, std::uint64_t seed) {
  if (x0 >= sys.num_states()) throw Error(ErrorKind::UnknownLabel, "initial state is not a state of the system");
  const Index dt = simulation_step(sys.time());
  SplitMix64 prng{seed};
  Trajectory traj;
  Index x = x0;
  Index now = sys.time().zero();
  for (std::size_t k = 0; k <= steps; ++k) {
    TrajectoryRow row;
    row.step = k;
    row.time = sys.time().is_discrete() ? k : now;
    row.state = x;
    row.position = sys.out(dt)[x];
    if (k < steps) {
      Index e = policy.choose(k, x, row.position, prng);
      if (e >= sys.interface().fiber(row.position).size()) {
        throw Error(ErrorKind::PolicyOutOfFiber, "policy '" + policy.name + "' chose direction " + std::to_string(e) +
                                                     " at position '" + sys.interface().positions().label(row.position) + "'");
      }
      row.input = e;
      x = sys.update(dt, x, e);
      now = sys.time().add(now, dt);
    }
    traj.rows.push_back(row);
  }
  return traj;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string trajectory_csv(const FinSet& states, const Polynomial& p, const TimeMonoid& time, const Trajectory& traj) {
  std::string out = "step,time,state,position,input\n";
  for (const auto& r : traj.rows) {
    out += std::to_string(r.step) + "," + csv_field(time.label(r.time)) + "," + csv_field(states.label(r.state)) + "," +
           csv_field(p.positions().label(r.position)) + ",";
    if (r.input) out += csv_field(p.fiber(r.position).label(*r.input));
    out += "\n";
  }
  return out;
}

std::string trajectory_csv(const OpenSystem& sys, const Trajectory& traj) {
  return trajectory_csv(sys.states(), sys.interface(), sys.time(), traj);
}

}  // namespace polydyn
