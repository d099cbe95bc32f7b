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


#include "polydyn/coalgebra.hpp"

#include <utility>

namespace polydyn {

namespace {

std::shared_ptr<const Polynomial> share(const Polynomial& p) { return std::make_shared<const Polynomial>(p); }

Dist mixture(const Dist& a, const Dist& b, const Rational& lambda) {
  std::vector<Rational> w(a.size());
  for (Index x = 0; x < a.size(); ++x) w[x] = lambda * a[x] + (1 - lambda) * b[x];
  return Dist(std::move(w));
}

std::vector<Dist> value_pool(const MonadSpec& monad, std::size_t n) {
  std::vector<Dist> pool;
  for (Index x = 0; x < n; ++x) pool.push_back(dirac(n, x));
  if (monad.kind == MonadKind::Distribution) {
    pool.push_back(uniform(n));
    for (Index x = 0; x < n; ++x) pool.push_back(mixture(dirac(n, x), uniform(n), Rational(1, 2)));
  }
  return pool;
}

// Kernels a ~> b: every map f, and for Distribution also f mixed half and half
// with the uniform kernel. `stride` thins the enumeration.
std::vector<Kernel> kernel_pool(const MonadSpec& monad, std::size_t a, std::size_t b, std::size_t stride) {
  std::vector<Kernel> pool;
  std::vector<Index> f(a, 0);
  std::vector<std::size_t> radices(a, b);
  std::size_t k = 0;
  do {
    if (k++ % stride != 0) continue;
    std::vector<Dist> det;
    std::vector<Dist> mixed;
    for (Index x = 0; x < a; ++x) {
      det.push_back(dirac(b, f[x]));
      if (monad.kind == MonadKind::Distribution) mixed.push_back(mixture(det.back(), uniform(b), Rational(1, 2)));
    }
    pool.emplace_back(std::move(det), b);
    if (!mixed.empty()) pool.emplace_back(std::move(mixed), b);
  } while (next_odometer(f, radices));
  return pool;
}

Kernel kleisli_via(const MonadSpec& monad, const Kernel& k2, const Kernel& k1) {
  std::vector<Dist> rows;
  for (const Dist& r : k1.rows()) rows.push_back(monad.bind(r, k2));
  return Kernel(std::move(rows), k2.cod_size());
}

Witness section_witness(const Polynomial& p, const Section& sigma) { return {{"section", describe(p, sigma)}}; }

void require_same_shape(const PTCoalgebra& a, const PTCoalgebra& b) {
  if (!(a.monad() == b.monad())) throw Error(ErrorKind::InterfaceMismatch, "coalgebras use different monads");
  if (!(a.time() == b.time())) throw Error(ErrorKind::InterfaceMismatch, "coalgebras run on different time monoids");
}

void require_map(const FinMap& f, std::size_t dom, std::size_t cod, const char* what) {
  if (f.size() != dom) throw Error(ErrorKind::InterfaceMismatch, std::string(what) + " is not total");
  for (Index x : f) {
    if (x >= cod) throw Error(ErrorKind::InterfaceMismatch, std::string(what) + " leaves its codomain");
  }
}

}  // namespace

std::string_view to_string(MonadKind kind) {
  return kind == MonadKind::Identity ? "identity" : "distribution";
}

Dist MonadSpec::bind(const Dist& d, const Kernel& k) const {
  if (d.size() != k.dom_size()) throw Error(ErrorKind::InterfaceMismatch, "bind: value and kernel carriers differ");
  std::vector<Rational> w(k.cod_size());
  for (Index x : d.support()) {
    const Dist& row = k.row(x);
    for (Index y = 0; y < w.size(); ++y) w[y] += d[x] * row[y];
  }
  return Dist(std::move(w));
}

bool MonadSpec::admits(const Dist& d) const {
  return kind == MonadKind::Distribution || d.support().size() == 1;
}

LawReport monad_laws(const MonadSpec& monad, std::size_t max_carrier) {
  LawReport report(std::string("monad-laws/") + std::string(to_string(monad.kind)));
  for (std::size_t a = 1; a <= max_carrier; ++a) {
    for (std::size_t b = 1; b <= max_carrier; ++b) {
      for (const Kernel& k : kernel_pool(monad, a, b, 1)) {
        for (Index x = 0; x < a; ++x) {
          report.add_cases();
          if (!(monad.bind(monad.unit(a, x), k) == k.row(x))) {
            report.fail("left-unit", {{"carriers", std::to_string(a) + "->" + std::to_string(b)}, {"x", std::to_string(x)}});
          }
        }
      }
    }
    Kernel unit = identity_kernel(a);
    for (const Dist& d : value_pool(monad, a)) {
      report.add_cases();
      if (!(monad.bind(d, unit) == d)) report.fail("right-unit", {{"carrier", std::to_string(a)}});
    }
    // All kernel pairs up to size 3; a thinned sample at size 4.
    const std::size_t stride1 = a < 4 ? 1 : 17;
    const std::size_t stride2 = a < 4 ? 1 : 13;
    std::vector<Kernel> k1s = kernel_pool(monad, a, a, stride1);
    std::vector<Kernel> k2s = kernel_pool(monad, a, a, stride2);
    for (const Dist& d : value_pool(monad, a)) {
      for (const Kernel& k1 : k1s) {
        Dist once = monad.bind(d, k1);
        for (const Kernel& k2 : k2s) {
          report.add_cases();
          if (!(monad.bind(once, k2) == monad.bind(d, kleisli_via(monad, k2, k1)))) {
            report.fail("associativity", {{"carrier", std::to_string(a)}});
          }
        }
      }
    }
  }
  return report;
}

PTCoalgebra PTCoalgebra::unchecked(MonadSpec monad, std::shared_ptr<const Polynomial> interface, TimeMonoid time,
                                   FinSet states, std::vector<FinMap> out,
                                   std::vector<std::vector<std::vector<Dist>>> upd) {
  if (time.is_sampled()) throw Error(ErrorKind::UnsupportedTime, "coalgebras cannot use sampled real time");
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
      for (const Dist& d : upd[k][s]) {
        if (d.size() != n) throw Error(ErrorKind::InvalidDistribution, "update at '" + states.label(s) + "' is not over the states");
        if (!monad.admits(d)) {
          throw Error(ErrorKind::InvalidDistribution, "update at '" + states.label(s) + "' is not deterministic");
        }
      }
    }
  }
  PTCoalgebra c;
  c.monad_ = monad;
  c.interface_ = std::move(interface);
  c.time_ = std::move(time);
  c.states_ = std::move(states);
  c.out_ = std::move(out);
  c.upd_ = std::move(upd);
  return c;
}

bool operator==(const PTCoalgebra& a, const PTCoalgebra& b) {
  return a.monad_ == b.monad_ && *a.interface_ == *b.interface_ && a.time_ == b.time_ && a.states_ == b.states_ &&
         a.out_ == b.out_ && a.upd_ == b.upd_;
}

PTCoalgebra mk_pt_coalgebra(MonadSpec monad, const Polynomial& p, TimeMonoid time, FinSet states,
                            std::vector<FinMap> out, std::vector<std::vector<std::vector<Dist>>> upd, std::size_t cap) {
  PTCoalgebra c =
      PTCoalgebra::unchecked(monad, share(p), std::move(time), std::move(states), std::move(out), std::move(upd));
  if (!c.time().is_discrete()) {
    LawReport report = check_kleisli_flow(c, cap);
    if (!report.ok()) throw Error(ErrorKind::KleisliFlowViolation, report.first_failure());
  }
  return c;
}

PTCoalgebra coalg_from_open(const OpenSystem& sys) {
  std::vector<std::vector<std::vector<Dist>>> upd;
  for (const auto& table : sys.upd_table()) {
    std::vector<std::vector<Dist>> per_state;
    for (const FinMap& u : table) {
      std::vector<Dist> values;
      for (Index x : u) values.push_back(dirac(sys.num_states(), x));
      per_state.push_back(std::move(values));
    }
    upd.push_back(std::move(per_state));
  }
  return PTCoalgebra::unchecked(identity_monad(), sys.interface_ptr(), sys.time(), sys.states(), sys.out_table(),
                                std::move(upd));
}

OpenSystem open_from_coalg(const PTCoalgebra& c) {
  if (c.monad().kind != MonadKind::Identity) {
    throw Error(ErrorKind::InterfaceMismatch, "only identity-monad coalgebras are open systems");
  }
  std::vector<std::vector<FinMap>> upd;
  for (const auto& table : c.upd_table()) {
    std::vector<FinMap> per_state;
    for (const auto& values : table) {
      FinMap u;
      for (const Dist& d : values) u.push_back(d.support().front());
      per_state.push_back(std::move(u));
    }
    upd.push_back(std::move(per_state));
  }
  return OpenSystem::unchecked(c.interface_ptr(), c.time(), c.states(), c.out_table(), std::move(upd));
}

Trajectory simulate_coalg(const PTCoalgebra& c, Index x0, const Policy& policy, std::size_t steps,
                          std::uint64_t seed) {
  if (x0 >= c.num_states()) throw Error(ErrorKind::UnknownLabel, "initial state is not a state of the coalgebra");
  const Index dt = simulation_step(c.time());
  SplitMix64 prng{seed};
  Trajectory traj;
  Index x = x0;
  Index now = c.time().zero();
  for (std::size_t k = 0; k <= steps; ++k) {
    TrajectoryRow row;
    row.step = k;
    row.time = c.time().is_discrete() ? k : now;
    row.state = x;
    row.position = c.out(dt)[x];
    if (k < steps) {
      Index e = policy.choose(k, x, row.position, prng);
      if (e >= c.interface().fiber(row.position).size()) {
        throw Error(ErrorKind::PolicyOutOfFiber, "policy '" + policy.name + "' chose direction " + std::to_string(e) +
                                                     " at position '" + c.interface().positions().label(row.position) + "'");
      }
      row.input = e;
      auto [next, after] = sample(c.update(dt, x, e), prng);
      prng = after;
      x = next;
      now = c.time().add(now, dt);
    }
    traj.rows.push_back(row);
  }
  return traj;
}

KleisliClosure::KleisliClosure(TimeMonoid time, std::vector<Kernel> stored)
    : time_(std::move(time)), stored_(std::move(stored)) {}

Kernel KleisliClosure::at(Index t) const {
  if (time_.is_discrete()) return kleisli_power(stored_.at(0), t);
  return stored_.at(t);
}

Kernel kleisli_step(const PTCoalgebra& c, const Section& sigma, Index t) {
  const FinMap& out = c.out(t);
  std::vector<Dist> rows;
  rows.reserve(out.size());
  for (Index s = 0; s < out.size(); ++s) rows.push_back(c.update(t, s, sigma.choice.at(out[s])));
  return Kernel(std::move(rows), c.num_states());
}

KleisliClosure kleisli_closure(const PTCoalgebra& c, const Section& sigma) {
  std::vector<Kernel> stored;
  for (Index t : c.time().structural_times()) stored.push_back(kleisli_step(c, sigma, t));
  return KleisliClosure(c.time(), std::move(stored));
}

LawReport check_kleisli_flow(const PTCoalgebra& c, std::size_t cap) {
  LawReport report("kleisli-flow");
  std::vector<Section> sections = enumerate_sections(c.interface(), cap);
  if (sections.empty()) report.warn("interface has no sections; flow law holds vacuously");
  const TimeMonoid& time = c.time();
  const std::size_t n = c.num_states();
  auto first_row = [&](const Kernel& a, const Kernel& b) -> std::string {
    for (Index s = 0; s < n; ++s) {
      if (!(a.row(s) == b.row(s))) return c.states().label(s);
    }
    return {};
  };
  for (const Section& sigma : sections) {
    KleisliClosure cl = kleisli_closure(c, sigma);
    std::vector<Kernel> at;
    if (time.is_discrete()) {
      at.push_back(identity_kernel(n));
      for (std::size_t k = 1; k <= TimeMonoid::kDiscreteLawBound; ++k) at.push_back(kleisli_compose(cl.stored()[0], at.back()));
    } else {
      at = cl.stored();
    }
    report.add_cases();
    if (std::string s = first_row(at[time.zero()], identity_kernel(n)); !s.empty()) {
      Witness w = section_witness(c.interface(), sigma);
      w.emplace_back("t", time.label(time.zero()));
      w.emplace_back("state", s);
      report.fail("kleisli-identity", std::move(w));
    }
    for (Index s = 0; s < at.size(); ++s) {
      for (Index t = 0; t < at.size(); ++t) {
        if (time.is_discrete() && s + t >= at.size()) break;
        report.add_cases();
        Index st = time.add(s, t);
        if (std::string x = first_row(at[st], kleisli_compose(at[s], at[t])); !x.empty()) {
          Witness w = section_witness(c.interface(), sigma);
          w.emplace_back("s", time.label(s));
          w.emplace_back("t", time.label(t));
          w.emplace_back("state", x);
          report.fail("chapman-kolmogorov", std::move(w));
        }
      }
    }
  }
  return report;
}

Check check_coalg_morphism(const FinMap& f, const PTCoalgebra& from, const PTCoalgebra& to, std::size_t cap) {
  require_same_shape(from, to);
  if (!(from.interface() == to.interface())) throw Error(ErrorKind::InterfaceMismatch, "coalgebras have different interfaces");
  require_map(f, from.num_states(), to.num_states(), "state map");
  std::vector<Section> sections = enumerate_sections(from.interface(), cap);
  for (Index t : from.time().structural_times()) {
    for (Index x = 0; x < f.size(); ++x) {
      if (to.out(t)[f[x]] != from.out(t)[x]) {
        return Check::fail("output mismatch at t=" + from.time().label(t) + ", state=" + from.states().label(x));
      }
    }
    for (const Section& sigma : sections) {
      Kernel a = kleisli_step(from, sigma, t);
      Kernel b = kleisli_step(to, sigma, t);
      for (Index x = 0; x < f.size(); ++x) {
        if (!(from.monad().map(f, a.row(x), to.num_states()) == b.row(f[x]))) {
          return Check::fail("square fails at t=" + from.time().label(t) + ", section " +
                             describe(from.interface(), sigma) + ", state=" + from.states().label(x));
        }
      }
    }
  }
  return Check::pass();
}

PTCoalgebra reindex_coalg(const Lens& phi, const PTCoalgebra& c) {
  if (!(phi.dom() == c.interface())) throw Error(ErrorKind::InterfaceMismatch, "lens domain is not the coalgebra interface");
  std::vector<FinMap> out;
  std::vector<std::vector<std::vector<Dist>>> upd;
  for (std::size_t k = 0; k < c.out_table().size(); ++k) {
    const FinMap& o = c.out_table()[k];
    out.push_back(compose_maps(phi.fwd(), o));
    std::vector<std::vector<Dist>> per_state(c.num_states());
    for (Index s = 0; s < per_state.size(); ++s) {
      for (Index e : phi.bwd()[o[s]]) per_state[s].push_back(c.upd_table()[k][s][e]);
    }
    upd.push_back(std::move(per_state));
  }
  return PTCoalgebra::unchecked(c.monad(), phi.cod_ptr(), c.time(), c.states(), std::move(out), std::move(upd));
}

bool operator==(const ClassicalCoalgebra& a, const ClassicalCoalgebra& b) {
  return a.monad == b.monad && *a.interface == *b.interface && a.states == b.states && a.out == b.out &&
         a.next == b.next;
}

ClassicalCoalgebra to_classical(const PTCoalgebra& c) {
  if (!c.time().is_discrete()) throw Error(ErrorKind::TimeNotDiscrete, "classical coalgebras need time N");
  return ClassicalCoalgebra{c.monad(), c.interface_ptr(), c.states(), c.out_table()[0], c.upd_table()[0]};
}

PTCoalgebra from_classical(const ClassicalCoalgebra& k) {
  return PTCoalgebra::unchecked(k.monad, k.interface, TimeMonoid::discrete(), k.states, {k.out}, {k.next});
}

Check check_classical_morphism(const FinMap& f, const ClassicalCoalgebra& from, const ClassicalCoalgebra& to) {
  if (!(from.monad == to.monad) || !(*from.interface == *to.interface)) {
    throw Error(ErrorKind::InterfaceMismatch, "classical coalgebras differ in monad or interface");
  }
  require_map(f, from.states.size(), to.states.size(), "state map");
  for (Index s = 0; s < f.size(); ++s) {
    if (to.out[f[s]] != from.out[s]) return Check::fail("output mismatch at state=" + from.states.label(s));
    for (Index d = 0; d < from.next[s].size(); ++d) {
      if (!(from.monad.map(f, from.next[s][d], to.states.size()) == to.next[f[s]][d])) {
        return Check::fail("successor mismatch at state=" + from.states.label(s) + ", direction=" +
                           from.interface->fiber(from.out[s]).label(d));
      }
    }
  }
  return Check::pass();
}

std::string tvalue_label(const MonadSpec& monad, const FinSet& states, const Dist& d) {
  std::vector<Index> support = d.support();
  if (monad.kind == MonadKind::Identity && support.size() == 1) return states.label(support.front());
  std::string out = "{";
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (k) out += ';';
    out += states.label(support[k]) + ":" + to_string(d[support[k]]);
  }
  return out + "}";
}

std::string classical_label(const ClassicalCoalgebra& k, Index s) {
  std::vector<std::string> values;
  for (const Dist& d : k.next.at(s)) values.push_back(tvalue_label(k.monad, k.states, d));
  return encode_pair(k.interface->positions().label(k.out.at(s)), encode_list(values));
}

LawReport coalg_bundle_check(const FinMap& proj, const PTCoalgebra& top, const PTCoalgebra& base, std::size_t cap) {
  require_same_shape(top, base);
  require_map(proj, top.num_states(), base.num_states(), "projection");
  LawReport report("coalg-bundle-square");
  std::vector<Section> sigmas = enumerate_sections(top.interface(), cap);
  std::vector<Section> varsigmas = enumerate_sections(base.interface(), cap);
  require_within_cap(saturating_mul(sigmas.size(), varsigmas.size()), cap, "section pairs");
  if (sigmas.empty() || varsigmas.empty()) report.warn("no section pairs; bundle squares hold vacuously");
  for (Index t : top.time().structural_times()) {
    std::vector<Kernel> downs;
    for (const Section& vs : varsigmas) downs.push_back(kleisli_step(base, vs, t));
    for (const Section& sigma : sigmas) {
      Kernel up = kleisli_step(top, sigma, t);
      std::vector<Dist> pushed;
      for (Index w = 0; w < top.num_states(); ++w) pushed.push_back(top.monad().map(proj, up.row(w), base.num_states()));
      for (std::size_t k = 0; k < varsigmas.size(); ++k) {
        report.add_cases();
        for (Index w = 0; w < pushed.size(); ++w) {
          if (!(pushed[w] == downs[k].row(proj[w]))) {
            report.fail("coalg-bundle-square", {{"t", top.time().label(t)},
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

CoalgBundle mk_coalg_bundle(PTCoalgebra top, PTCoalgebra base, FinMap proj, std::size_t cap) {
  LawReport report = coalg_bundle_check(proj, top, base, cap);
  if (!report.ok()) throw Error(ErrorKind::BundleSquareBroken, report.first_failure());
  return CoalgBundle{std::move(top), std::move(base), std::move(proj)};
}

Lift coalg_nesting_lift(const NestedPoly& nested, const CoalgBundle& bundle, Index t) {
  if (!(nested.top == bundle.top.interface()) || !(nested.base == bundle.base.interface())) {
    throw Error(ErrorKind::InterfaceMismatch, "nesting does not match the bundle interfaces");
  }
  Lift lift = nesting_cube_lift(nested, CubeData{bundle.top.out(t), bundle.base.out(t), bundle.proj});
  const MonadSpec& monad = bundle.top.monad();
  for (Index w = 0; w < lift.size(); ++w) {
    for (Index d = 0; d < lift[w].size(); ++d) {
      Dist up = monad.map(bundle.proj, bundle.top.update(t, w, d), bundle.base.num_states());
      if (!(up == bundle.base.update(t, lift[w][d].pos, lift[w][d].dir))) {
        throw Error(ErrorKind::NestingConditionFails,
                    "lifted flow square fails at t=" + bundle.top.time().label(t) + ", state=" +
                        bundle.top.states().label(w) + ", direction=" +
                        nested.top.fiber(bundle.top.out(t)[w]).label(d));
      }
    }
  }
  return lift;
}

Check check_total_coalg_morphism(const TotalMorphism& m, const CoalgBundle& from, const CoalgBundle& to,
                                 std::size_t cap) {
  if (m.state_cod != to.top.num_states() || m.base_cod != to.base.num_states()) {
    return Check::fail("morphism does not land in the target bundle");
  }
  if (Check c = check_coalg_morphism(m.base_map, from.base, to.base, cap); !c) return Check::fail("base: " + c.witness);
  if (Check c = check_coalg_morphism(m.state_map, from.top, to.top, cap); !c) return Check::fail("top: " + c.witness);
  for (Index w = 0; w < m.state_map.size(); ++w) {
    if (to.proj[m.state_map[w]] != m.base_map[from.proj[w]]) {
      return Check::fail("projection square fails at state=" + from.top.states().label(w));
    }
  }
  return Check::pass();
}

TotalMorphism compose_coalg_total_morphisms(const TotalMorphism& second, const TotalMorphism& first) {
  return compose_total_morphisms(second, first);
}

}  // namespace polydyn
