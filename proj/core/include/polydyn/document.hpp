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
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "polydyn/bundle.hpp"
#include "polydyn/coalgebra.hpp"
#include "polydyn/lens.hpp"
#include "polydyn/nested.hpp"
#include "polydyn/random_system.hpp"

namespace polydyn {

struct LensDef {
  std::string dom;
  std::string cod;
  Lens lens;
};

struct SectionDef {
  std::string poly;
  Section section;
};

struct DistDef {
  FinSet over;
  Dist dist;
};

struct KernelDef {
  FinSet states;
  Kernel kernel;
};

struct ClosedDef {
  std::string time;
  ClosedSystem sys;
  std::optional<Dist> measure;
};

struct OpenDef {
  std::string interface;
  std::string time;
  OpenSystem sys;
};

struct CoalgDef {
  std::string interface;
  std::string time;
  PTCoalgebra coalg;
};

/// Random system: `system` names a closed or open definition, `base` a closed
/// definition carrying a measure.
struct RdsDef {
  std::string system;
  std::string base;
  FinMap proj;
};

struct BundleDef {
  std::string top;
  std::string base;
  FinMap proj;
  std::optional<Dist> measure;
};

struct CoalgBundleDef {
  std::string top;
  std::string base;
  FinMap proj;
};

using SystemDef = std::variant<ClosedDef, OpenDef, CoalgDef, RdsDef, BundleDef, CoalgBundleDef>;

struct NestingDef {
  std::string top;
  std::string base;
  NestedPoly nested;
  std::string bundle;  // empty when the nesting stands alone
};

/// A set of named definitions. Names are unique across all sections; the time
/// name "N" is built in.
struct Document {
  std::string description;
  std::map<std::string, Polynomial> polynomials;
  std::map<std::string, LensDef> lenses;
  std::map<std::string, SectionDef> sections;
  std::map<std::string, TimeMonoid> times;
  std::map<std::string, DistDef> distributions;
  std::map<std::string, KernelDef> kernels;
  std::map<std::string, SystemDef> systems;
  std::map<std::string, NestingDef> nestings;

  [[nodiscard]] bool empty() const;
  [[nodiscard]] bool defines(const std::string& name) const;
  /// Throws UnresolvedReference.
  [[nodiscard]] const Polynomial& polynomial(const std::string& name) const;
  [[nodiscard]] const TimeMonoid& time(const std::string& name) const;
  [[nodiscard]] const SystemDef& system(const std::string& name) const;
};

/// Throws SyntaxError with line and column, UnresolvedReference, or
/// ValidationError prefixed with the path of the offending entry.
Document parse_document(std::string_view text);
/// Canonical form: sorted keys, two-space indentation, trailing newline.
std::string serialize_document(const Document& doc);

/// Runtime views of random definitions.
MetricSystem metric_of(const Document& doc, const std::string& name);
ClosedRDS closed_rds_of(const Document& doc, const RdsDef& def);
OpenRDS open_rds_of(const Document& doc, const RdsDef& def);
BundleSystem bundle_of(const Document& doc, const BundleDef& def);
CoalgBundle coalg_bundle_of(const Document& doc, const CoalgBundleDef& def);

/// Definitions appended by transformations.
void add_definition(Document& doc, const std::string& name, SystemDef def);
void add_polynomial(Document& doc, const std::string& name, Polynomial p);
void add_lens(Document& doc, const std::string& name, LensDef def);
void add_kernel(Document& doc, const std::string& name, KernelDef def);
void add_distribution(Document& doc, const std::string& name, DistDef def);

}  // namespace polydyn
