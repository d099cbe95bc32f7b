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


#include "polydyn/commands.hpp"

#include <memory>
#include <utility>

#include "json.hpp"
#include "polydyn/markov.hpp"

namespace polydyn {

namespace {

using nlohmann::ordered_json;

bool wants(const std::string& suite, const char* name) { return suite == "all" || suite == name; }

LawReport lens_units(const Lens& f, const std::string& name) {
  LawReport r("poly/lens-units/" + name);
  r.add_cases(2);
  if (!(compose_lenses(identity_lens(f.cod()), f) == f)) r.fail("left-unit", {{"lens", name}});
  if (!(compose_lenses(f, identity_lens(f.dom())) == f)) r.fail("right-unit", {{"lens", name}});
  return r;
}

void poly_suite(const Document& doc, std::vector<LawReport>& out) {
  for (const auto& [name, def] : doc.lenses) out.push_back(lens_units(def.lens, name));
  if (!doc.lenses.empty()) {
    LawReport r("poly/lens-associativity");
    for (const auto& [hn, h] : doc.lenses) {
      for (const auto& [gn, g] : doc.lenses) {
        if (g.cod != h.dom) continue;
        for (const auto& [fn, f] : doc.lenses) {
          if (f.cod != g.dom) continue;
          r.add_cases();
          if (!(compose_lenses(h.lens, compose_lenses(g.lens, f.lens)) ==
                compose_lenses(compose_lenses(h.lens, g.lens), f.lens))) {
            r.fail("associativity", {{"h", hn}, {"g", gn}, {"f", fn}});
          }
        }
      }
    }
    if (r.cases() == 0) r.warn("no composable lens triples");
    out.push_back(std::move(r));
  }
  if (!doc.polynomials.empty()) {
    LawReport r("poly/tensor-identity");
    for (const auto& [pn, p] : doc.polynomials) {
      for (const auto& [qn, q] : doc.polynomials) {
        r.add_cases();
        if (!(tensor_lenses(identity_lens(p), identity_lens(q)) == identity_lens(tensor(p, q)))) {
          r.fail("tensor-preserves-identity", {{"p", pn}, {"q", qn}});
        }
      }
    }
    out.push_back(std::move(r));
  }
  for (const auto& [name, def] : doc.nestings) {
    LawReport r("poly/nesting/" + name);
    r.add_cases();  // commutation is enforced on load
    out.push_back(std::move(r));
  }
}

void dyn_suite(const Document& doc, std::vector<LawReport>& out, std::size_t cap) {
  for (const auto& [name, t] : doc.times) {
    LawReport r("dyn/monoid/" + name);
    r.merge(monoid_laws(t));
    out.push_back(std::move(r));
  }
  for (const auto& [name, def] : doc.systems) {
    if (const auto* c = std::get_if<ClosedDef>(&def)) {
      LawReport r("dyn/flow/" + name);
      r.merge(check_flow_closed(c->sys));
      out.push_back(std::move(r));
    } else if (const auto* o = std::get_if<OpenDef>(&def)) {
      LawReport r("dyn/flow/" + name);
      r.merge(check_flow_open(o->sys, cap));
      out.push_back(std::move(r));
    }
  }
}

template <class Fn>
void nesting_lifts(const std::string& name, std::vector<LawReport>& out, const TimeMonoid& time, Fn&& lift) {
  LawReport r("nesting/" + name);
  for (Index t : time.structural_times()) {
    r.add_cases();
    try {
      lift(t);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NestingConditionFails) throw;
      r.fail("nesting-condition", {{"t", time.label(t)}, {"detail", e.what()}});
    }
  }
  out.push_back(std::move(r));
}

void rand_suite(const Document& doc, std::vector<LawReport>& out, std::size_t cap) {
  for (const auto& [name, def] : doc.systems) {
    if (const auto* c = std::get_if<ClosedDef>(&def); c && c->measure) {
      LawReport r("rand/measure/" + name);
      ProbSpace space{c->sys.states(), *c->measure};
      for (Index t : c->sys.time().structural_times()) {
        r.add_cases();
        if (Check k = is_measure_preserving(c->sys.action(t), space); !k) {
          r.fail("measure-preserved", {{"t", c->sys.time().label(t)}, {"detail", k.witness}});
        }
      }
      out.push_back(std::move(r));
    } else if (const auto* d = std::get_if<RdsDef>(&def)) {
      LawReport r("rand/rds/" + name);
      if (std::holds_alternative<ClosedDef>(doc.system(d->system))) {
        ClosedRDS rds = closed_rds_of(doc, *d);
        for (Index t : rds.total.time().structural_times()) {
          r.add_cases();
          FinMap up = compose_maps(rds.proj, rds.total.action(t));
          FinMap down = compose_maps(rds.base.closed.action(t), rds.proj);
          for (Index w = 0; w < up.size(); ++w) {
            if (up[w] != down[w]) {
              r.fail("bundle-square", {{"t", rds.total.time().label(t)}, {"state", rds.total.states().label(w)}});
              break;
            }
          }
        }
      } else {
        OpenRDS rds = open_rds_of(doc, *d);
        r.merge(check_rds_square(rds.sys, rds.base, rds.proj, cap));
      }
      out.push_back(std::move(r));
    } else if (const auto* b = std::get_if<BundleDef>(&def)) {
      BundleSystem bundle = bundle_of(doc, *b);
      LawReport r("rand/bundle/" + name);
      r.merge(check_bundle_squares(bundle.top, bundle.base, bundle.proj, cap));
      if (bundle.metric_base) r.merge(check_open_metric(bundle.base, *bundle.metric_base, cap));
      out.push_back(std::move(r));
    }
  }
  for (const auto& [name, def] : doc.nestings) {
    if (def.bundle.empty()) continue;
    if (const auto* b = std::get_if<BundleDef>(&doc.system(def.bundle))) {
      BundleSystem bundle = bundle_of(doc, *b);
      nesting_lifts(name, out, bundle.top.time(), [&](Index t) { nesting_lift(def.nested, bundle, t); });
    }
  }
}

void coalg_suite(const Document& doc, std::vector<LawReport>& out, std::size_t cap) {
  for (const auto& [name, def] : doc.systems) {
    if (const auto* c = std::get_if<CoalgDef>(&def)) {
      LawReport r("coalg/flow/" + name);
      r.merge(check_kleisli_flow(c->coalg, cap));
      out.push_back(std::move(r));
    } else if (const auto* b = std::get_if<CoalgBundleDef>(&def)) {
      CoalgBundle bundle = coalg_bundle_of(doc, *b);
      LawReport r("coalg/bundle/" + name);
      r.merge(coalg_bundle_check(bundle.proj, bundle.top, bundle.base, cap));
      out.push_back(std::move(r));
    }
  }
  for (const auto& [name, def] : doc.nestings) {
    if (def.bundle.empty()) continue;
    if (const auto* b = std::get_if<CoalgBundleDef>(&doc.system(def.bundle))) {
      CoalgBundle bundle = coalg_bundle_of(doc, *b);
      nesting_lifts(name, out, bundle.top.time(),
                    [&](Index t) { coalg_nesting_lift(def.nested, bundle, t); });
    }
  }
}

CommandResult with_document(Document doc, std::string report) {
  return CommandResult{kExitPass, std::move(report), serialize_document(doc)};
}

const LensDef& lens_ref(const Document& doc, const std::string& name) {
  auto it = doc.lenses.find(name);
  if (it == doc.lenses.end()) throw Error(ErrorKind::UnresolvedReference, "no lens '" + name + "'");
  return it->second;
}

const KernelDef& kernel_ref(const Document& doc, const std::string& name) {
  auto it = doc.kernels.find(name);
  if (it == doc.kernels.end()) throw Error(ErrorKind::UnresolvedReference, "no kernel '" + name + "'");
  return it->second;
}

void require_args(const std::vector<std::string>& args, std::size_t n, const std::string& what) {
  if (args.size() != n) {
    throw Error(ErrorKind::UsageError, what + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
  }
}

std::string name_or(const std::string& out_name, const std::string& fallback) {
  return out_name.empty() ? fallback : out_name;
}

}  // namespace

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::SquareDoesNotCommute:
    case ErrorKind::FlowViolation:
    case ErrorKind::MeasureNotPreserved:
    case ErrorKind::BundleSquareBroken:
    case ErrorKind::NotAMetricMorphism:
    case ErrorKind::NestingConditionFails:
    case ErrorKind::KleisliFlowViolation:
      return kExitLawFailure;
    default:
      return kExitUsage;
  }
}

CommandResult cmd_check(const Document& doc, const std::string& suite, std::size_t cap, const std::string& format) {
  if (suite != "all" && suite != "poly" && suite != "dyn" && suite != "rand" && suite != "coalg") {
    throw Error(ErrorKind::UsageError, "unknown suite '" + suite + "'");
  }
  if (format != "text" && format != "json") throw Error(ErrorKind::UsageError, "unknown format '" + format + "'");
  std::vector<LawReport> reports;
  if (wants(suite, "poly")) poly_suite(doc, reports);
  if (wants(suite, "dyn")) dyn_suite(doc, reports, cap);
  if (wants(suite, "rand")) rand_suite(doc, reports, cap);
  if (wants(suite, "coalg")) coalg_suite(doc, reports, cap);
  if (reports.empty()) {
    LawReport r("document");
    r.warn(doc.empty() ? "document defines nothing" : "suite '" + suite + "' has nothing to check");
    reports.push_back(std::move(r));
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.ok();

  CommandResult result;
  result.exit_code = ok ? kExitPass : kExitLawFailure;
  if (format == "json") {
    ordered_json j;
    j["status"] = ok ? "pass" : "fail";
    j["reports"] = ordered_json::array();
    for (const auto& r : reports) j["reports"].push_back(ordered_json::parse(r.to_json()));
    result.report = j.dump(2) + "\n";
  } else {
    for (const auto& r : reports) result.report += r.to_text();
    result.report += std::string("status: ") + (ok ? "pass" : "fail") + "\n";
  }
  return result;
}

CommandResult cmd_transform(const Document& doc, const std::string& op, const std::vector<std::string>& args,
                            const std::string& out_name, std::size_t cap) {
  Document next = doc;
  if (op == "tensor") {
    require_args(args, 2, "tensor");
    const std::string out = name_or(out_name, args[0] + "*" + args[1]);
    if (doc.polynomials.count(args[0]) && doc.polynomials.count(args[1])) {
      add_polynomial(next, out, tensor(doc.polynomial(args[0]), doc.polynomial(args[1])));
      return with_document(std::move(next), "added polynomial " + out + "\n");
    }
    const auto* a = std::get_if<OpenDef>(&doc.system(args[0]));
    const auto* b = std::get_if<OpenDef>(&doc.system(args[1]));
    if (!a || !b) throw Error(ErrorKind::UsageError, "tensor takes two polynomials or two open systems");
    if (a->time != b->time) throw Error(ErrorKind::InterfaceMismatch, "systems run on different time monoids");
    OpenSystem sys = tensor_systems(a->sys, b->sys);
    const std::string iface = out + ".interface";
    add_polynomial(next, iface, sys.interface());
    add_definition(next, out, OpenDef{iface, a->time, std::move(sys)});
    return with_document(std::move(next), "added open system " + out + " over " + iface + "\n");
  }
  if (op == "reindex") {
    require_args(args, 2, "reindex");
    const LensDef& phi = lens_ref(doc, args[0]);
    const std::string out = name_or(out_name, args[1] + "@" + args[0]);
    const SystemDef& def = doc.system(args[1]);
    if (const auto* o = std::get_if<OpenDef>(&def)) {
      add_definition(next, out, OpenDef{phi.cod, o->time, reindex_open(phi.lens, o->sys)});
    } else if (const auto* c = std::get_if<CoalgDef>(&def)) {
      add_definition(next, out, CoalgDef{phi.cod, c->time, reindex_coalg(phi.lens, c->coalg)});
    } else {
      throw Error(ErrorKind::UsageError, "reindex takes an open system or a coalgebra");
    }
    return with_document(std::move(next), "added " + out + " over " + phi.cod + "\n");
  }
  if (op == "rebase") {
    require_args(args, 2, "rebase");
    const LensDef& chi = lens_ref(doc, args[0]);
    const auto* b = std::get_if<BundleDef>(&doc.system(args[1]));
    if (!b) throw Error(ErrorKind::UsageError, "rebase takes a lens and a bundle");
    const std::string out = name_or(out_name, args[1] + "@" + args[0]);
    BundleSystem rebased = rebase_along_base_lens(chi.lens, bundle_of(doc, *b), cap);
    const std::string base = out + ".base";
    const std::string time = std::get<OpenDef>(doc.system(b->base)).time;
    add_definition(next, base, OpenDef{chi.cod, time, std::move(rebased.base)});
    add_definition(next, out, BundleDef{b->top, base, b->proj, b->measure});
    return with_document(std::move(next), "added bundle " + out + " over " + base + "\n");
  }
  if (op == "compose-lens") {
    require_args(args, 2, "compose-lens");
    const LensDef& g = lens_ref(doc, args[0]);
    const LensDef& f = lens_ref(doc, args[1]);
    const std::string out = name_or(out_name, args[0] + "." + args[1]);
    add_lens(next, out, LensDef{f.dom, g.cod, compose_lenses(g.lens, f.lens)});
    return with_document(std::move(next), "added lens " + out + "\n");
  }
  if (op == "hom") {
    require_args(args, 2, "hom");
    const std::string out = name_or(out_name, "[" + args[0] + "," + args[1] + "]");
    Polynomial hom = internal_hom(doc.polynomial(args[0]), doc.polynomial(args[1]), cap);
    std::string report = "added polynomial " + out + " with " + std::to_string(hom.num_positions()) + " positions\n";
    add_polynomial(next, out, std::move(hom));
    return with_document(std::move(next), std::move(report));
  }
  throw Error(ErrorKind::UsageError, "unknown transform '" + op + "'");
}

CommandResult cmd_markov(const Document& doc, const std::string& mode, const std::vector<std::string>& args,
                         const std::string& out_name, std::size_t cap) {
  Document next = doc;
  if (mode == "extract") {
    require_args(args, 1, "extract");
    const auto* d = std::get_if<RdsDef>(&doc.system(args[0]));
    if (!d) throw Error(ErrorKind::UsageError, "'" + args[0] + "' is not a random system");
    MarkovChain chain = extract_markov(closed_rds_of(doc, *d));
    const std::string out = name_or(out_name, args[0] + ".kernel");
    std::string report = "extracted kernel " + out + " on " + std::to_string(chain.states.size()) + " states\n";
    add_kernel(next, out, KernelDef{std::move(chain.states), std::move(chain.kernel)});
    return with_document(std::move(next), std::move(report));
  }
  if (mode == "pushback") {
    require_args(args, 1, "pushback");
    const KernelDef& k = kernel_ref(doc, args[0]);
    Pushback pb = randomness_pushback(k.kernel, k.states, cap);
    bool reproduces = true;
    for (Index m = 0; m < k.states.size(); ++m) {
      FinMap at(pb.maps.size());
      for (Index w = 0; w < pb.maps.size(); ++w) at[w] = pb.maps[w][m];
      reproduces = reproduces && pushforward(at, pb.omega.measure, k.states.size()) == k.kernel.row(m);
    }
    const std::string out = name_or(out_name, args[0] + ".noise");
    std::string report = "noise space " + out + ": " + std::to_string(pb.omega.carrier.size()) + " maps, " +
                         std::to_string(pb.omega.measure.support().size()) + " with positive weight\n" +
                         (reproduces ? "pushforward reproduces every row exactly\n" : "pushforward MISMATCH\n");
    add_distribution(next, out, DistDef{pb.omega.carrier, pb.omega.measure});
    CommandResult r = with_document(std::move(next), std::move(report));
    if (!reproduces) r.exit_code = kExitLawFailure;
    return r;
  }
  if (mode == "roundtrip") {
    require_args(args, 2, "roundtrip");
    const KernelDef& k = kernel_ref(doc, args[0]);
    std::size_t horizon = 0;
    try {
      horizon = std::stoul(args[1]);
    } catch (const std::exception&) {
      throw Error(ErrorKind::UsageError, "horizon must be a positive integer");
    }
    ClosedRDS rds = kernel_to_rds(k.kernel, k.states, horizon, cap);
    MarkovChain back = extract_markov(rds);
    const bool exact = back.states == k.states && back.kernel == k.kernel;
    const std::size_t atoms = rds.base.space.measure.support().size();
    std::string report = "horizon " + std::to_string(horizon) + ": noise space has " +
                         std::to_string(rds.base.space.carrier.size()) + " sequences, " + std::to_string(atoms) +
                         " with positive weight\n";
    if (atoms == 1) report += "degenerate base: a single noise atom per coordinate\n";
    report += exact ? "exact match\n" : "MISMATCH between extracted and original kernel\n";
    const std::string out = name_or(out_name, args[0] + ".rds");
    add_definition(next, out + ".noise", ClosedDef{"N", rds.base.closed, rds.base.space.measure});
    add_definition(next, out + ".total", ClosedDef{"N", rds.total, std::nullopt});
    add_definition(next, out, RdsDef{out + ".total", out + ".noise", rds.proj});
    CommandResult r = with_document(std::move(next), std::move(report));
    if (!exact) r.exit_code = kExitLawFailure;
    return r;
  }
  throw Error(ErrorKind::UsageError, "unknown markov mode '" + mode + "'");
}

CommandResult cmd_simulate(const Document& doc, const SimulateOptions& opts) {
  if (opts.format != "csv" && opts.format != "json") throw Error(ErrorKind::UsageError, "unknown format '" + opts.format + "'");
  const SystemDef& def = doc.system(opts.system);
  std::shared_ptr<const Polynomial> p;
  const FinSet* states = nullptr;
  const TimeMonoid* time = nullptr;
  OpenSystem lifted;
  const PTCoalgebra* coalg = nullptr;
  if (const auto* o = std::get_if<OpenDef>(&def)) {
    lifted = o->sys;
  } else if (const auto* c = std::get_if<ClosedDef>(&def)) {
    lifted = open_from_closed(c->sys);
  } else if (const auto* k = std::get_if<CoalgDef>(&def)) {
    coalg = &k->coalg;
  } else {
    throw Error(ErrorKind::UsageError, "'" + opts.system + "' cannot be simulated");
  }
  if (coalg) {
    p = coalg->interface_ptr();
    states = &coalg->states();
    time = &coalg->time();
  } else {
    p = lifted.interface_ptr();
    states = &lifted.states();
    time = &lifted.time();
  }

  Policy policy;
  if (opts.policy == "uniform") {
    policy = uniform_policy(*p);
  } else if (opts.policy.rfind("section:", 0) == 0) {
    const std::string name = opts.policy.substr(8);
    auto it = doc.sections.find(name);
    if (it == doc.sections.end()) throw Error(ErrorKind::UnresolvedReference, "no section '" + name + "'");
    if (!(doc.polynomial(it->second.poly) == *p)) {
      throw Error(ErrorKind::InterfaceMismatch, "section '" + name + "' is not over the system interface");
    }
    policy = section_policy(it->second.section);
  } else {
    throw Error(ErrorKind::UsageError, "policy must be 'uniform' or 'section:<name>'");
  }
  if (states->empty()) throw Error(ErrorKind::UsageError, "system has no states");
  const Index x0 = opts.x0.empty() ? 0 : states->index_of(opts.x0);
  Trajectory traj = coalg ? simulate_coalg(*coalg, x0, policy, opts.steps, opts.seed)
                          : simulate_open(lifted, x0, policy, opts.steps, opts.seed);

  CommandResult result;
  result.report = "simulated " + std::to_string(opts.steps) + " steps of " + opts.system + " with seed " +
                  std::to_string(opts.seed) + "\n";
  if (opts.format == "csv") {
    result.output = trajectory_csv(*states, *p, *time, traj);
    return result;
  }
  ordered_json j;
  j["system"] = opts.system;
  j["seed"] = opts.seed;
  j["policy"] = opts.policy;
  j["rows"] = ordered_json::array();
  for (const auto& r : traj.rows) {
    ordered_json row;
    row["step"] = r.step;
    row["time"] = time->label(r.time);
    row["state"] = states->label(r.state);
    row["position"] = p->positions().label(r.position);
    row["input"] = r.input ? ordered_json(p->fiber(r.position).label(*r.input)) : ordered_json(nullptr);
    j["rows"].push_back(std::move(row));
  }
  result.output = j.dump(2) + "\n";
  return result;
}

}  // namespace polydyn
