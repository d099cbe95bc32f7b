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

#include "polydyn/open_system.hpp"
#include "polydyn/probability.hpp"

namespace polydyn {

/// Closed system whose every action preserves a measure on its states.
struct MetricSystem {
  ClosedSystem closed;
  ProbSpace space;
};

/// Throws MeasureNotPreserved (with t and the element whose weight moves).
MetricSystem mk_metric(ClosedSystem closed, Dist measure);
/// phi . a(t) = b(t) . phi and phi_* alpha = beta.
Check check_metric_morphism(const FinMap& phi, const MetricSystem& a, const MetricSystem& b);

/// Closed random dynamical system: a bundle proj : S -> Omega of closed
/// systems over a metric base.
struct ClosedRDS {
  MetricSystem base;
  ClosedSystem total;
  FinMap proj;
};

/// Throws BundleSquareBroken if proj . total(t) != base(t) . proj.
ClosedRDS mk_closed_rds(MetricSystem base, ClosedSystem total, FinMap proj);

/// Open random dynamical system over a metric base.
struct OpenRDS {
  OpenSystem sys;
  MetricSystem base;
  FinMap proj;
};

/// proj . closure(t, sigma) = base(t) . proj for every structural t and section.
LawReport check_rds_square(const OpenSystem& sys, const MetricSystem& base, const FinMap& proj,
                           std::size_t cap = kDefaultCap);
/// Throws BundleSquareBroken on the first failing square.
OpenRDS mk_open_rds(OpenSystem sys, MetricSystem base, FinMap proj, std::size_t cap = kDefaultCap);
/// The closed random system obtained by closing with sigma.
ClosedRDS closure_rds(const OpenRDS& rds, const Section& sigma);

/// Open-system morphism that also commutes with the projections.
Check check_rds_morphism(const FinMap& f, const OpenRDS& from, const OpenRDS& to, std::size_t cap = kDefaultCap);
OpenRDS reindex_rds(const Lens& phi, const OpenRDS& rds, std::size_t cap = kDefaultCap);
/// Post-composes the projection with a metric morphism phi : base -> target.
/// Throws NotAMetricMorphism if phi fails the flow or measure condition.
OpenRDS rebase_rds(const FinMap& phi, const MetricSystem& target, const OpenRDS& rds, std::size_t cap = kDefaultCap);

/// Open system with a measure preserved by every closure.
struct OpenMetricSystem {
  OpenSystem sys;
  Dist measure;
};

/// Throws MeasureNotPreserved with the section, time and element.
OpenMetricSystem mk_open_metric(OpenSystem sys, Dist measure, std::size_t cap = kDefaultCap);
LawReport check_open_metric(const OpenSystem& sys, const Dist& measure, std::size_t cap = kDefaultCap);

/// Morphism of a total category: a map of total states together with a map
/// of base states. The codomain sizes are recorded so chains can be checked.
struct TotalMorphism {
  FinMap state_map;
  std::size_t state_cod = 0;
  FinMap base_map;
  std::size_t base_cod = 0;

  friend bool operator==(const TotalMorphism&, const TotalMorphism&) = default;
};

TotalMorphism identity_total_morphism(std::size_t states, std::size_t base_states);
/// (f', phi') after (f, phi) = (f' . f, phi' . phi); throws ChainMismatch.
TotalMorphism compose_total_morphisms(const TotalMorphism& second, const TotalMorphism& first);
/// phi is a metric morphism and f is an RDS morphism from the rebased source.
Check check_total_rds_morphism(const TotalMorphism& m, const OpenRDS& from, const OpenRDS& to,
                               std::size_t cap = kDefaultCap);

}  // namespace polydyn
