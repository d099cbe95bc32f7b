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


#include "polydyn/time_monoid.hpp"

#include <cmath>

#include "polydyn/error.hpp"

namespace polydyn {

TimeMonoid TimeMonoid::discrete() { return TimeMonoid{}; }

TimeMonoid TimeMonoid::cyclic(std::size_t order) {
  if (order == 0) throw Error(ErrorKind::InvalidTable, "cyclic monoid needs order >= 1");
  FinSet elems = FinSet::range(order);
  std::vector<FinMap> add(order, FinMap(order));
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      add[elems.index_of(std::to_string(a))][elems.index_of(std::to_string(b))] =
          elems.index_of(std::to_string((a + b) % order));
    }
  }
  return table(std::move(elems), std::move(add), FinSet::range(order).index_of("0"));
}

TimeMonoid TimeMonoid::table(FinSet elements, std::vector<FinMap> add, Index zero) {
  LawReport report = check_table_laws(elements, add, zero);
  if (!report.ok()) throw Error(ErrorKind::InvalidTable, report.first_failure());
  TimeMonoid t;
  t.kind_ = TimeKind::CyclicTable;
  t.elements_ = std::move(elements);
  t.add_ = std::move(add);
  t.zero_ = zero;
  return t;
}

TimeMonoid TimeMonoid::sampled_real(double dt, std::size_t horizon) {
  if (!(dt > 0.0) || horizon == 0) throw Error(ErrorKind::InvalidTable, "sampled time needs dt > 0 and horizon >= 1");
  TimeMonoid t;
  t.kind_ = TimeKind::SampledReal;
  t.dt_ = dt;
  t.horizon_ = horizon;
  return t;
}

Index TimeMonoid::add(Index a, Index b) const {
  if (kind_ == TimeKind::CyclicTable) return add_.at(a).at(b);
  return a + b;
}

std::vector<Index> TimeMonoid::law_times() const {
  std::size_t n = kind_ == TimeKind::DiscreteNat   ? kDiscreteLawBound + 1
                  : kind_ == TimeKind::CyclicTable ? elements_.size()
                                                   : horizon_ + 1;
  return identity_map(n);
}

std::vector<Index> TimeMonoid::structural_times() const {
  if (kind_ == TimeKind::DiscreteNat) return {1};
  return law_times();
}

Index TimeMonoid::element(const std::string& label) const {
  if (kind_ == TimeKind::CyclicTable) return elements_.index_of(label);
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(label, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != label.size() || label.empty() || label.front() == '-') {
    throw Error(ErrorKind::UnknownLabel, "'" + label + "' is not a time element");
  }
  return static_cast<Index>(v);
}

std::string TimeMonoid::label(Index t) const {
  if (kind_ == TimeKind::CyclicTable) return elements_.label(t);
  return std::to_string(t);
}

double TimeMonoid::value(Index t) const {
  if (kind_ == TimeKind::SampledReal) return static_cast<double>(t) * dt_;
  return static_cast<double>(t);
}

LawReport check_table_laws(const FinSet& elements, const std::vector<FinMap>& add, Index zero) {
  LawReport report("monoid");
  const std::size_t n = elements.size();
  if (zero >= n) {
    report.fail("unit", {{"zero", std::to_string(zero)}});
    return report;
  }
  if (add.size() != n) {
    report.fail("closure", {{"rows", std::to_string(add.size())}});
    return report;
  }
  for (Index a = 0; a < n; ++a) {
    if (add[a].size() != n) {
      report.fail("closure", {{"row", elements.label(a)}});
      return report;
    }
    for (Index b = 0; b < n; ++b) {
      if (add[a][b] >= n) {
        report.fail("closure", {{"a", elements.label(a)}, {"b", elements.label(b)}});
        return report;
      }
    }
  }
  for (Index a = 0; a < n; ++a) {
    report.add_cases();
    if (add[zero][a] != a || add[a][zero] != a) report.fail("unit", {{"t", elements.label(a)}});
  }
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      for (Index c = 0; c < n; ++c) {
        report.add_cases();
        if (add[add[a][b]][c] != add[a][add[b][c]]) {
          report.fail("associativity", {{"a", elements.label(a)}, {"b", elements.label(b)}, {"c", elements.label(c)}});
        }
      }
    }
  }
  return report;
}

LawReport monoid_laws(const TimeMonoid& t) {
  if (t.is_table()) return check_table_laws(t.elements(), t.add_table(), t.zero());
  LawReport report("monoid");
  auto times = t.law_times();
  if (t.is_sampled()) report.set_approximate();
  for (Index a : times) {
    report.add_cases();
    if (t.add(t.zero(), a) != a || t.add(a, t.zero()) != a) report.fail("unit", {{"t", t.label(a)}});
    for (Index b : times) {
      if (t.is_sampled()) {
        report.add_cases();
        double lhs = t.value(a) + t.value(b);
        if (std::abs(lhs - t.value(t.add(a, b))) > 1e-9) {
          report.fail("grid-addition", {{"s", t.label(a)}, {"t", t.label(b)}});
        }
      }
      for (Index c : times) {
        report.add_cases();
        if (t.add(t.add(a, b), c) != t.add(a, t.add(b, c))) {
          report.fail("associativity", {{"a", t.label(a)}, {"b", t.label(b)}, {"c", t.label(c)}});
        }
      }
    }
  }
  return report;
}

}  // namespace polydyn
