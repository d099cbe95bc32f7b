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


#include "polydyn/document.hpp"

#include <algorithm>
#include <memory>
#include <utility>

#include "json.hpp"

namespace polydyn {

using nlohmann::json;

namespace {

const TimeMonoid& builtin_discrete() {
  static const TimeMonoid n = TimeMonoid::discrete();
  return n;
}

[[noreturn]] void invalid(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::ValidationError, path + ": " + msg);
}

template <class F>
auto wrapped(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::SyntaxError:
      case ErrorKind::UnresolvedReference:
      case ErrorKind::ValidationError:
        throw;
      default:
        invalid(path, e.what());
    }
  }
}

const json& field(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) invalid(path, std::string("missing field '") + key + "'");
  return *it;
}

void only_fields(const json& j, std::initializer_list<const char*> keys, const std::string& path) {
  if (!j.is_object()) invalid(path, "expected an object");
  for (const auto& [k, _] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; })) {
      invalid(path, "unexpected field '" + k + "'");
    }
  }
}

std::string str(const json& j, const std::string& path) {
  if (!j.is_string()) invalid(path, "expected a string");
  return j.get<std::string>();
}

FinSet label_set(const json& j, const std::string& path) {
  if (!j.is_array()) invalid(path, "expected an array of labels");
  std::vector<std::string> labels;
  for (const auto& x : j) labels.push_back(str(x, path));
  return wrapped(path, [&] { return FinSet(std::move(labels)); });
}

json labels_json(const FinSet& s) { return json(s.labels()); }

Rational rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  return wrapped(path, [&] { return parse_rational(str(j, path)); });
}

// Total map dom -> cod written as {dom label: cod label}.
FinMap label_map(const FinSet& dom, const FinSet& cod, const json& j, const std::string& path) {
  if (!j.is_object()) invalid(path, "expected an object");
  FinMap f(dom.size());
  for (const auto& [k, v] : j.items()) {
    auto x = dom.find(k);
    if (!x) invalid(path, "unknown key '" + k + "'");
    auto y = cod.find(str(v, path + "." + k));
    if (!y) invalid(path + "." + k, "unknown label '" + v.get<std::string>() + "'");
    f[*x] = *y;
  }
  if (j.size() != dom.size()) invalid(path, "map is not total");
  return f;
}

json map_json(const FinSet& dom, const FinSet& cod, const FinMap& f) {
  json j = json::object();
  for (Index x = 0; x < f.size(); ++x) j[dom.label(x)] = cod.label(f[x]);
  return j;
}

Dist dist_over(const FinSet& over, const json& j, const std::string& path) {
  if (j.is_string()) {
    auto x = over.find(j.get<std::string>());
    if (!x) invalid(path, "unknown label '" + j.get<std::string>() + "'");
    return dirac(over.size(), *x);
  }
  if (!j.is_object()) invalid(path, "expected a weight table");
  std::vector<Rational> w(over.size());
  for (const auto& [k, v] : j.items()) {
    auto x = over.find(k);
    if (!x) invalid(path, "unknown label '" + k + "'");
    w[*x] = rational(v, path + "." + k);
  }
  return wrapped(path, [&] { return Dist(std::move(w)); });
}

json dist_json(const FinSet& over, const Dist& d) {
  json j = json::object();
  for (Index x : d.support()) j[over.label(x)] = to_string(d[x]);
  return j;
}

Polynomial parse_polynomial(const json& j, const std::string& path) {
  if (!j.is_object()) invalid(path, "expected {position: [directions]}");
  std::vector<std::string> positions;
  std::map<std::string, FinSet> fibers;
  for (const auto& [k, v] : j.items()) {
    positions.push_back(k);
    fibers.emplace(k, label_set(v, path + "." + k));
  }
  return wrapped(path, [&] { return Polynomial::make(FinSet(positions), fibers); });
}

json polynomial_json(const Polynomial& p) {
  json j = json::object();
  for (Index i = 0; i < p.num_positions(); ++i) j[p.positions().label(i)] = labels_json(p.fiber(i));
  return j;
}

TimeMonoid parse_time(const json& j, const std::string& path) {
  const std::string kind = str(field(j, "kind", path), path + ".kind");
  if (kind == "discrete") {
    only_fields(j, {"kind"}, path);
    return TimeMonoid::discrete();
  }
  if (kind == "cyclic") {
    only_fields(j, {"kind", "order"}, path);
    const json& order = field(j, "order", path);
    if (!order.is_number_unsigned() || order.get<std::size_t>() == 0) invalid(path + ".order", "expected a positive integer");
    return TimeMonoid::cyclic(order.get<std::size_t>());
  }
  if (kind == "table") {
    only_fields(j, {"kind", "elements", "zero", "add"}, path);
    FinSet elements = label_set(field(j, "elements", path), path + ".elements");
    const json& add = field(j, "add", path);
    if (!add.is_object()) invalid(path + ".add", "expected an object");
    std::vector<FinMap> table(elements.size());
    for (const auto& [k, row] : add.items()) {
      auto a = elements.find(k);
      if (!a) invalid(path + ".add", "unknown element '" + k + "'");
      table[*a] = label_map(elements, elements, row, path + ".add." + k);
    }
    if (add.size() != elements.size()) invalid(path + ".add", "table is not total");
    auto zero = elements.find(str(field(j, "zero", path), path + ".zero"));
    if (!zero) invalid(path + ".zero", "unknown element");
    return wrapped(path, [&] { return TimeMonoid::table(elements, std::move(table), *zero); });
  }
  invalid(path + ".kind", "expected discrete, cyclic or table");
}

json time_json(const TimeMonoid& t) {
  if (t.is_discrete()) return {{"kind", "discrete"}};
  if (t.is_table() && t == TimeMonoid::cyclic(t.order())) return {{"kind", "cyclic"}, {"order", t.order()}};
  json add = json::object();
  for (Index a = 0; a < t.order(); ++a) add[t.elements().label(a)] = map_json(t.elements(), t.elements(), t.add_table()[a]);
  return {{"kind", "table"}, {"elements", labels_json(t.elements())}, {"zero", t.elements().label(t.zero())}, {"add", add}};
}

// Per-slot tables: "out"/"update" (or "step") for N, "steps" keyed by element otherwise.
std::vector<std::pair<const json*, std::string>> slots_of(const json& j, const TimeMonoid& time, const std::string& path) {
  std::vector<std::pair<const json*, std::string>> slots;
  if (time.is_discrete()) {
    slots.emplace_back(&j, path);
    return slots;
  }
  const json& steps = field(j, "steps", path);
  if (!steps.is_object()) invalid(path + ".steps", "expected an object keyed by time elements");
  for (Index t : time.structural_times()) {
    const std::string label = time.label(t);
    auto it = steps.find(label);
    if (it == steps.end()) invalid(path + ".steps", "no entry for time '" + label + "'");
    slots.emplace_back(&*it, path + ".steps." + label);
  }
  if (steps.size() != time.structural_times().size()) invalid(path + ".steps", "unknown time element");
  return slots;
}

template <class F>
json slots_json(const TimeMonoid& time, std::size_t count, F&& slot) {
  if (time.is_discrete()) return slot(0);
  json steps = json::object();
  for (std::size_t k = 0; k < count; ++k) steps[time.label(time.structural_times()[k])] = slot(k);
  return json{{"steps", steps}};
}

template <class Value, class Parse>
std::vector<std::vector<Value>> parse_update(const Polynomial& p, const FinSet& states, const FinMap& out, const json& j,
                                             const std::string& path, Parse&& parse) {
  if (!j.is_object()) invalid(path, "expected {state: {direction: value}}");
  std::vector<std::vector<Value>> upd(states.size());
  for (const auto& [k, row] : j.items()) {
    auto s = states.find(k);
    if (!s) invalid(path, "unknown state '" + k + "'");
    const FinSet& fiber = p.fiber(out[*s]);
    if (!row.is_object()) invalid(path + "." + k, "expected {direction: value}");
    upd[*s].resize(fiber.size());
    std::vector<bool> seen(fiber.size(), false);
    for (const auto& [d, v] : row.items()) {
      auto e = fiber.find(d);
      if (!e) invalid(path + "." + k, "'" + d + "' is not a direction at position '" + p.positions().label(out[*s]) + "'");
      upd[*s][*e] = parse(v, path + "." + k + "." + d);
      seen[*e] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) invalid(path + "." + k, "update misses a direction");
  }
  if (j.size() != states.size()) invalid(path, "update is not total on the states");
  return upd;
}

FinMap parse_out(const Polynomial& p, const FinSet& states, const json& slot, const std::string& path) {
  return label_map(states, p.positions(), field(slot, "out", path), path + ".out");
}

json out_update_json(const Polynomial& p, const FinSet& states, const FinMap& out, auto&& value) {
  json o = map_json(states, p.positions(), out);
  json u = json::object();
  for (Index s = 0; s < states.size(); ++s) {
    json row = json::object();
    const FinSet& fiber = p.fiber(out[s]);
    for (Index e = 0; e < fiber.size(); ++e) row[fiber.label(e)] = value(s, e);
    u[states.label(s)] = row;
  }
  return json{{"out", o}, {"update", u}};
}

void check_name(const Document& doc, const std::string& name, const std::string& path) {
  if (name.empty()) invalid(path, "empty name");
  if (name == "N") invalid(path, "'N' is reserved for the natural-number time");
  if (doc.defines(name)) invalid(path, "name '" + name + "' is defined twice");
}

template <class Def>
const Def& system_as(const Document& doc, const std::string& name, const char* what, const std::string& path) {
  auto it = doc.systems.find(name);
  if (it == doc.systems.end()) throw Error(ErrorKind::UnresolvedReference, path + ": no system '" + name + "'");
  const Def* def = std::get_if<Def>(&it->second);
  if (!def) invalid(path, "'" + name + "' is not " + what);
  return *def;
}

std::string resolve_time(const Document& doc, const json& j, const std::string& path) {
  std::string name = j.contains("time") ? str(j["time"], path + ".time") : "N";
  (void)doc.time(name);
  return name;
}

SystemDef parse_base_system(const Document& doc, const std::string& kind, const json& j, const std::string& path) {
  if (kind == "closed") {
    only_fields(j, {"kind", "time", "states", "step", "steps", "measure"}, path);
    std::string tname = resolve_time(doc, j, path);
    const TimeMonoid& time = doc.time(tname);
    FinSet states = label_set(field(j, "states", path), path + ".states");
    std::vector<FinMap> stored;
    if (time.is_discrete()) {
      stored.push_back(label_map(states, states, field(j, "step", path), path + ".step"));
    } else {
      for (auto [slot, spath] : slots_of(j, time, path)) stored.push_back(label_map(states, states, *slot, spath));
    }
    std::optional<Dist> measure;
    if (j.contains("measure")) measure = dist_over(states, j["measure"], path + ".measure");
    ClosedSystem sys = wrapped(path, [&] { return ClosedSystem::unchecked(time, states, std::move(stored)); });
    return ClosedDef{tname, std::move(sys), std::move(measure)};
  }
  if (kind == "open" || kind == "coalgebra") {
    const bool coalg = kind == "coalgebra";
    if (coalg) {
      only_fields(j, {"kind", "monad", "interface", "time", "states", "out", "update", "steps"}, path);
    } else {
      only_fields(j, {"kind", "interface", "time", "states", "out", "update", "steps"}, path);
    }
    std::string pname = str(field(j, "interface", path), path + ".interface");
    auto p = std::make_shared<const Polynomial>(doc.polynomial(pname));
    std::string tname = resolve_time(doc, j, path);
    const TimeMonoid& time = doc.time(tname);
    if (time.is_discrete() && j.contains("steps")) invalid(path, "N-time systems give 'out' and 'update' directly");
    FinSet states = label_set(field(j, "states", path), path + ".states");
    std::vector<FinMap> outs;
    if (!coalg) {
      std::vector<std::vector<FinMap>> upds;
      for (auto [slot, spath] : slots_of(j, time, path)) {
        outs.push_back(parse_out(*p, states, *slot, spath));
        auto rows = parse_update<Index>(*p, states, outs.back(), field(*slot, "update", spath), spath + ".update",
                                        [&](const json& v, const std::string& vp) {
                                          auto x = states.find(str(v, vp));
                                          if (!x) invalid(vp, "unknown state '" + v.get<std::string>() + "'");
                                          return *x;
                                        });
        upds.emplace_back(rows.begin(), rows.end());
      }
      OpenSystem sys = wrapped(path, [&] { return OpenSystem::unchecked(p, time, states, std::move(outs), std::move(upds)); });
      return OpenDef{pname, tname, std::move(sys)};
    }
    std::string monad_name = str(field(j, "monad", path), path + ".monad");
    MonadSpec monad;
    if (monad_name == "identity") {
      monad = identity_monad();
    } else if (monad_name == "distribution") {
      monad = distribution_monad();
    } else {
      invalid(path + ".monad", "expected identity or distribution");
    }
    std::vector<std::vector<std::vector<Dist>>> upds;
    for (auto [slot, spath] : slots_of(j, time, path)) {
      outs.push_back(parse_out(*p, states, *slot, spath));
      upds.push_back(parse_update<Dist>(*p, states, outs.back(), field(*slot, "update", spath), spath + ".update",
                                        [&](const json& v, const std::string& vp) { return dist_over(states, v, vp); }));
    }
    PTCoalgebra c = wrapped(path, [&] {
      return PTCoalgebra::unchecked(monad, p, time, states, std::move(outs), std::move(upds));
    });
    return CoalgDef{pname, tname, std::move(c)};
  }
  invalid(path + ".kind", "unknown system kind '" + kind + "'");
}

SystemDef parse_dependent_system(const Document& doc, const std::string& kind, const json& j, const std::string& path) {
  if (kind == "rds") {
    only_fields(j, {"kind", "system", "base", "proj"}, path);
    RdsDef def{str(field(j, "system", path), path + ".system"), str(field(j, "base", path), path + ".base"), {}};
    const ClosedDef& base = system_as<ClosedDef>(doc, def.base, "a closed system", path + ".base");
    if (!base.measure) invalid(path + ".base", "'" + def.base + "' carries no measure");
    const SystemDef& sys = doc.system(def.system);
    const FinSet* states = nullptr;
    const TimeMonoid* time = nullptr;
    if (const auto* c = std::get_if<ClosedDef>(&sys)) {
      states = &c->sys.states();
      time = &c->sys.time();
    } else if (const auto* o = std::get_if<OpenDef>(&sys)) {
      states = &o->sys.states();
      time = &o->sys.time();
    } else {
      invalid(path + ".system", "'" + def.system + "' is neither closed nor open");
    }
    if (!(*time == base.sys.time())) invalid(path, "system and base run on different times");
    def.proj = label_map(*states, base.sys.states(), field(j, "proj", path), path + ".proj");
    return def;
  }
  if (kind == "bundle") {
    only_fields(j, {"kind", "top", "base", "proj", "measure"}, path);
    BundleDef def{str(field(j, "top", path), path + ".top"), str(field(j, "base", path), path + ".base"), {}, {}};
    const OpenDef& top = system_as<OpenDef>(doc, def.top, "an open system", path + ".top");
    const OpenDef& base = system_as<OpenDef>(doc, def.base, "an open system", path + ".base");
    if (!(top.sys.time() == base.sys.time())) invalid(path, "top and base run on different times");
    def.proj = label_map(top.sys.states(), base.sys.states(), field(j, "proj", path), path + ".proj");
    if (j.contains("measure")) def.measure = dist_over(base.sys.states(), j["measure"], path + ".measure");
    return def;
  }
  if (kind == "coalgebra-bundle") {
    only_fields(j, {"kind", "top", "base", "proj"}, path);
    CoalgBundleDef def{str(field(j, "top", path), path + ".top"), str(field(j, "base", path), path + ".base"), {}};
    const CoalgDef& top = system_as<CoalgDef>(doc, def.top, "a coalgebra", path + ".top");
    const CoalgDef& base = system_as<CoalgDef>(doc, def.base, "a coalgebra", path + ".base");
    if (!(top.coalg.time() == base.coalg.time())) invalid(path, "top and base run on different times");
    if (!(top.coalg.monad() == base.coalg.monad())) invalid(path, "top and base use different monads");
    def.proj = label_map(top.coalg.states(), base.coalg.states(), field(j, "proj", path), path + ".proj");
    return def;
  }
  invalid(path + ".kind", "unknown system kind '" + kind + "'");
}

json system_json(const Document& doc, const SystemDef& def) {
  return std::visit(
      [&](const auto& d) -> json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ClosedDef>) {
          const ClosedSystem& c = d.sys;
          json j = c.time().is_discrete()
                       ? json{{"step", map_json(c.states(), c.states(), c.stored()[0])}}
                       : slots_json(c.time(), c.stored().size(),
                                    [&](std::size_t k) { return map_json(c.states(), c.states(), c.stored()[k]); });
          j["kind"] = "closed";
          j["time"] = d.time;
          j["states"] = labels_json(c.states());
          if (d.measure) j["measure"] = dist_json(c.states(), *d.measure);
          return j;
        } else if constexpr (std::is_same_v<T, OpenDef>) {
          const OpenSystem& s = d.sys;
          json j = slots_json(s.time(), s.out_table().size(), [&](std::size_t k) {
            return out_update_json(s.interface(), s.states(), s.out_table()[k],
                                   [&](Index x, Index e) { return s.states().label(s.upd_table()[k][x][e]); });
          });
          j["kind"] = "open";
          j["interface"] = d.interface;
          j["time"] = d.time;
          j["states"] = labels_json(s.states());
          return j;
        } else if constexpr (std::is_same_v<T, CoalgDef>) {
          const PTCoalgebra& c = d.coalg;
          const bool ident = c.monad().kind == MonadKind::Identity;
          json j = slots_json(c.time(), c.out_table().size(), [&](std::size_t k) {
            return out_update_json(c.interface(), c.states(), c.out_table()[k], [&](Index x, Index e) -> json {
              const Dist& v = c.upd_table()[k][x][e];
              if (ident) return c.states().label(v.support().front());
              return dist_json(c.states(), v);
            });
          });
          j["kind"] = "coalgebra";
          j["monad"] = std::string(to_string(c.monad().kind));
          j["interface"] = d.interface;
          j["time"] = d.time;
          j["states"] = labels_json(c.states());
          return j;
        } else if constexpr (std::is_same_v<T, RdsDef>) {
          const ClosedDef& base = std::get<ClosedDef>(doc.system(d.base));
          const SystemDef& sys = doc.system(d.system);
          const FinSet& states = std::holds_alternative<ClosedDef>(sys) ? std::get<ClosedDef>(sys).sys.states()
                                                                        : std::get<OpenDef>(sys).sys.states();
          return {{"kind", "rds"}, {"system", d.system}, {"base", d.base},
                  {"proj", map_json(states, base.sys.states(), d.proj)}};
        } else if constexpr (std::is_same_v<T, BundleDef>) {
          const OpenSystem& top = std::get<OpenDef>(doc.system(d.top)).sys;
          const OpenSystem& base = std::get<OpenDef>(doc.system(d.base)).sys;
          json j{{"kind", "bundle"}, {"top", d.top}, {"base", d.base},
                 {"proj", map_json(top.states(), base.states(), d.proj)}};
          if (d.measure) j["measure"] = dist_json(base.states(), *d.measure);
          return j;
        } else {
          const PTCoalgebra& top = std::get<CoalgDef>(doc.system(d.top)).coalg;
          const PTCoalgebra& base = std::get<CoalgDef>(doc.system(d.base)).coalg;
          return {{"kind", "coalgebra-bundle"}, {"top", d.top}, {"base", d.base},
                  {"proj", map_json(top.states(), base.states(), d.proj)}};
        }
      },
      def);
}

std::map<std::string, std::string> string_table(const json& j, const std::string& path) {
  if (!j.is_object()) invalid(path, "expected an object of strings");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out.emplace(k, str(v, path + "." + k));
  return out;
}

std::pair<const Polynomial*, const Polynomial*> bundle_interfaces(const Document& doc, const std::string& name,
                                                                  const std::string& path) {
  const SystemDef& def = doc.system(name);
  if (const auto* b = std::get_if<BundleDef>(&def)) {
    return {&std::get<OpenDef>(doc.system(b->top)).sys.interface(), &std::get<OpenDef>(doc.system(b->base)).sys.interface()};
  }
  if (const auto* c = std::get_if<CoalgBundleDef>(&def)) {
    return {&std::get<CoalgDef>(doc.system(c->top)).coalg.interface(),
            &std::get<CoalgDef>(doc.system(c->base)).coalg.interface()};
  }
  invalid(path, "'" + name + "' is not a bundle");
}

std::string position_of(std::size_t offset, std::string_view text) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

bool Document::empty() const {
  return polynomials.empty() && lenses.empty() && sections.empty() && times.empty() && distributions.empty() &&
         kernels.empty() && systems.empty() && nestings.empty();
}

bool Document::defines(const std::string& name) const {
  return polynomials.count(name) || lenses.count(name) || sections.count(name) || times.count(name) ||
         distributions.count(name) || kernels.count(name) || systems.count(name) || nestings.count(name);
}

const Polynomial& Document::polynomial(const std::string& name) const {
  auto it = polynomials.find(name);
  if (it == polynomials.end()) throw Error(ErrorKind::UnresolvedReference, "no polynomial '" + name + "'");
  return it->second;
}

const TimeMonoid& Document::time(const std::string& name) const {
  if (name == "N") return builtin_discrete();
  auto it = times.find(name);
  if (it == times.end()) throw Error(ErrorKind::UnresolvedReference, "no time monoid '" + name + "'");
  return it->second;
}

const SystemDef& Document::system(const std::string& name) const {
  auto it = systems.find(name);
  if (it == systems.end()) throw Error(ErrorKind::UnresolvedReference, "no system '" + name + "'");
  return it->second;
}

Document parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    auto colon = what.rfind(": ");
    throw Error(ErrorKind::SyntaxError,
                position_of(e.byte == 0 ? 0 : e.byte - 1, text) + ": " + (colon == std::string::npos ? what : what.substr(colon + 2)));
  }
  only_fields(root,
              {"description", "polynomials", "lenses", "sections", "times", "distributions", "kernels", "systems",
               "nestings"},
              "document");
  auto section = [&](const char* key) -> const json& {
    static const json empty = json::object();
    auto it = root.find(key);
    if (it == root.end()) return empty;
    if (!it->is_object()) invalid(key, "expected an object of named definitions");
    return *it;
  };

  Document doc;
  if (root.contains("description")) doc.description = str(root["description"], "description");
  for (const auto& [name, j] : section("polynomials").items()) {
    const std::string path = "polynomials." + name;
    check_name(doc, name, path);
    doc.polynomials.emplace(name, parse_polynomial(j, path));
  }
  for (const auto& [name, j] : section("times").items()) {
    const std::string path = "times." + name;
    check_name(doc, name, path);
    doc.times.emplace(name, parse_time(j, path));
  }
  for (const auto& [name, j] : section("lenses").items()) {
    const std::string path = "lenses." + name;
    check_name(doc, name, path);
    only_fields(j, {"dom", "cod", "fwd", "bwd"}, path);
    std::string dom = str(field(j, "dom", path), path + ".dom");
    std::string cod = str(field(j, "cod", path), path + ".cod");
    const Polynomial& p = doc.polynomial(dom);
    const Polynomial& q = doc.polynomial(cod);
    auto fwd = string_table(field(j, "fwd", path), path + ".fwd");
    std::map<std::string, std::map<std::string, std::string>> bwd;
    const json& b = field(j, "bwd", path);
    if (!b.is_object()) invalid(path + ".bwd", "expected an object");
    for (const auto& [k, v] : b.items()) bwd.emplace(k, string_table(v, path + ".bwd." + k));
    Lens lens = wrapped(path, [&] { return Lens::make(p, q, fwd, bwd); });
    doc.lenses.emplace(name, LensDef{dom, cod, std::move(lens)});
  }
  for (const auto& [name, j] : section("sections").items()) {
    const std::string path = "sections." + name;
    check_name(doc, name, path);
    only_fields(j, {"poly", "choice"}, path);
    std::string poly = str(field(j, "poly", path), path + ".poly");
    const Polynomial& p = doc.polynomial(poly);
    auto choice = string_table(field(j, "choice", path), path + ".choice");
    Section s = wrapped(path, [&] { return make_section(p, choice); });
    doc.sections.emplace(name, SectionDef{poly, std::move(s)});
  }
  for (const auto& [name, j] : section("distributions").items()) {
    const std::string path = "distributions." + name;
    check_name(doc, name, path);
    only_fields(j, {"over", "weights"}, path);
    FinSet over = label_set(field(j, "over", path), path + ".over");
    Dist d = dist_over(over, field(j, "weights", path), path + ".weights");
    doc.distributions.emplace(name, DistDef{std::move(over), std::move(d)});
  }
  for (const auto& [name, j] : section("kernels").items()) {
    const std::string path = "kernels." + name;
    check_name(doc, name, path);
    only_fields(j, {"states", "rows"}, path);
    FinSet states = label_set(field(j, "states", path), path + ".states");
    const json& rows = field(j, "rows", path);
    if (!rows.is_object()) invalid(path + ".rows", "expected {state: {state: weight}}");
    std::vector<Dist> ds(states.size());
    for (const auto& [k, row] : rows.items()) {
      auto x = states.find(k);
      if (!x) invalid(path + ".rows", "unknown state '" + k + "'");
      ds[*x] = dist_over(states, row, path + ".rows." + k);
    }
    if (rows.size() != states.size()) invalid(path + ".rows", "kernel is missing a row");
    Kernel k = wrapped(path, [&] { return Kernel(std::move(ds), states.size()); });
    doc.kernels.emplace(name, KernelDef{std::move(states), std::move(k)});
  }
  const json& systems = section("systems");
  std::vector<std::pair<std::string, const json*>> dependent;
  for (const auto& [name, j] : systems.items()) {
    const std::string path = "systems." + name;
    check_name(doc, name, path);
    if (!j.is_object()) invalid(path, "expected an object");
    const std::string kind = str(field(j, "kind", path), path + ".kind");
    if (kind == "rds" || kind == "bundle" || kind == "coalgebra-bundle") {
      dependent.emplace_back(name, &j);
      continue;
    }
    doc.systems.emplace(name, parse_base_system(doc, kind, j, path));
  }
  for (const auto& [name, j] : dependent) {
    const std::string path = "systems." + name;
    doc.systems.emplace(name, parse_dependent_system(doc, str((*j)["kind"], path), *j, path));
  }
  for (const auto& [name, j] : section("nestings").items()) {
    const std::string path = "nestings." + name;
    check_name(doc, name, path);
    only_fields(j, {"top", "base", "m", "n", "bundle"}, path);
    NestingDef def;
    def.top = str(field(j, "top", path), path + ".top");
    def.base = str(field(j, "base", path), path + ".base");
    const Polynomial& p = doc.polynomial(def.top);
    const Polynomial& b = doc.polynomial(def.base);
    auto m = string_table(field(j, "m", path), path + ".m");
    auto n = string_table(field(j, "n", path), path + ".n");
    def.nested = wrapped(path, [&] { return mk_nested(p, b, m, n); });
    if (j.contains("bundle")) {
      def.bundle = str(j["bundle"], path + ".bundle");
      auto [top, base] = bundle_interfaces(doc, def.bundle, path + ".bundle");
      if (!(*top == p) || !(*base == b)) invalid(path + ".bundle", "bundle interfaces differ from the nesting");
    }
    doc.nestings.emplace(name, std::move(def));
  }
  return doc;
}

std::string serialize_document(const Document& doc) {
  json root = json::object();
  if (!doc.description.empty()) root["description"] = doc.description;
  auto put = [&](const char* key, const auto& defs, auto&& render) {
    if (defs.empty()) return;
    json j = json::object();
    for (const auto& [name, def] : defs) j[name] = render(def);
    root[key] = j;
  };
  put("polynomials", doc.polynomials, [](const Polynomial& p) { return polynomial_json(p); });
  put("times", doc.times, [](const TimeMonoid& t) { return time_json(t); });
  put("lenses", doc.lenses, [](const LensDef& d) {
    const Lens& f = d.lens;
    json fwd = map_json(f.dom().positions(), f.cod().positions(), f.fwd());
    json bwd = json::object();
    for (Index i = 0; i < f.dom().num_positions(); ++i) {
      bwd[f.dom().positions().label(i)] = map_json(f.cod().fiber(f.fwd(i)), f.dom().fiber(i), f.bwd()[i]);
    }
    return json{{"dom", d.dom}, {"cod", d.cod}, {"fwd", fwd}, {"bwd", bwd}};
  });
  put("sections", doc.sections, [&](const SectionDef& d) {
    const Polynomial& p = doc.polynomial(d.poly);
    json choice = json::object();
    for (Index i = 0; i < p.num_positions(); ++i) choice[p.positions().label(i)] = p.fiber(i).label(d.section.choice[i]);
    return json{{"poly", d.poly}, {"choice", choice}};
  });
  put("distributions", doc.distributions,
      [](const DistDef& d) { return json{{"over", labels_json(d.over)}, {"weights", dist_json(d.over, d.dist)}}; });
  put("kernels", doc.kernels, [](const KernelDef& d) {
    json rows = json::object();
    for (Index x = 0; x < d.states.size(); ++x) rows[d.states.label(x)] = dist_json(d.states, d.kernel.row(x));
    return json{{"states", labels_json(d.states)}, {"rows", rows}};
  });
  put("systems", doc.systems, [&](const SystemDef& d) { return system_json(doc, d); });
  put("nestings", doc.nestings, [](const NestingDef& d) {
    const NestedPoly& np = d.nested;
    json m = json::object();
    for (Index i = 0; i < np.top.num_positions(); ++i) {
      for (Index e = 0; e < np.top.fiber(i).size(); ++e) {
        const Direction& to = np.m[i][e];
        m[encode_pair(np.top.positions().label(i), np.top.fiber(i).label(e))] =
            encode_pair(np.base.positions().label(to.pos), np.base.fiber(to.pos).label(to.dir));
      }
    }
    json j{{"top", d.top}, {"base", d.base}, {"m", m}, {"n", map_json(np.top.positions(), np.base.positions(), np.n)}};
    if (!d.bundle.empty()) j["bundle"] = d.bundle;
    return j;
  });
  return root.dump(2) + "\n";
}

MetricSystem metric_of(const Document& doc, const std::string& name) {
  const auto* c = std::get_if<ClosedDef>(&doc.system(name));
  if (!c || !c->measure) throw Error(ErrorKind::ValidationError, "'" + name + "' is not a closed system with a measure");
  return MetricSystem{c->sys, ProbSpace{c->sys.states(), *c->measure}};
}

ClosedRDS closed_rds_of(const Document& doc, const RdsDef& def) {
  const auto* c = std::get_if<ClosedDef>(&doc.system(def.system));
  if (!c) throw Error(ErrorKind::ValidationError, "'" + def.system + "' is not a closed system");
  return ClosedRDS{metric_of(doc, def.base), c->sys, def.proj};
}

OpenRDS open_rds_of(const Document& doc, const RdsDef& def) {
  const auto* o = std::get_if<OpenDef>(&doc.system(def.system));
  if (!o) throw Error(ErrorKind::ValidationError, "'" + def.system + "' is not an open system");
  return OpenRDS{o->sys, metric_of(doc, def.base), def.proj};
}

BundleSystem bundle_of(const Document& doc, const BundleDef& def) {
  return BundleSystem{std::get<OpenDef>(doc.system(def.top)).sys, std::get<OpenDef>(doc.system(def.base)).sys, def.proj,
                      def.measure};
}

CoalgBundle coalg_bundle_of(const Document& doc, const CoalgBundleDef& def) {
  return CoalgBundle{std::get<CoalgDef>(doc.system(def.top)).coalg, std::get<CoalgDef>(doc.system(def.base)).coalg,
                     def.proj};
}

void add_definition(Document& doc, const std::string& name, SystemDef def) {
  check_name(doc, name, "systems." + name);
  doc.systems.emplace(name, std::move(def));
}

void add_polynomial(Document& doc, const std::string& name, Polynomial p) {
  check_name(doc, name, "polynomials." + name);
  doc.polynomials.emplace(name, std::move(p));
}

void add_lens(Document& doc, const std::string& name, LensDef def) {
  check_name(doc, name, "lenses." + name);
  doc.lenses.emplace(name, std::move(def));
}

void add_kernel(Document& doc, const std::string& name, KernelDef def) {
  check_name(doc, name, "kernels." + name);
  doc.kernels.emplace(name, std::move(def));
}

void add_distribution(Document& doc, const std::string& name, DistDef def) {
  check_name(doc, name, "distributions." + name);
  doc.distributions.emplace(name, std::move(def));
}

}  // namespace polydyn
