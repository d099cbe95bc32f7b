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

#include <cstddef>
#include <string>
#include <vector>

#include "polydyn/finset.hpp"
#include "polydyn/law_report.hpp"

namespace polydyn {

enum class TimeKind { DiscreteNat, CyclicTable, SampledReal };

/// Time monoid. Elements are referred to by an Index whose meaning depends on
/// the variant: the natural number itself (DiscreteNat), the element index in
/// canonical label order (CyclicTable), or the grid count k of time k*dt
/// (SampledReal).
class TimeMonoid {
 public:
  /// (N, +, 0).
  static TimeMonoid discrete();
  /// Z_H with elements labelled "0".."H-1".
  static TimeMonoid cyclic(std::size_t order);
  /// Arbitrary finite monoid given by its addition table over `elements`
  /// (table[a][b] = a + b). Throws InvalidTable if closure, unit or
  /// associativity fails.
  static TimeMonoid table(FinSet elements, std::vector<FinMap> add, Index zero);
  /// Grid {k*dt : 0 <= k <= horizon}; checks on it are approximate.
  static TimeMonoid sampled_real(double dt, std::size_t horizon);

  [[nodiscard]] TimeKind kind() const noexcept { return kind_; }
  [[nodiscard]] bool is_discrete() const noexcept { return kind_ == TimeKind::DiscreteNat; }
  [[nodiscard]] bool is_table() const noexcept { return kind_ == TimeKind::CyclicTable; }
  [[nodiscard]] bool is_sampled() const noexcept { return kind_ == TimeKind::SampledReal; }

  [[nodiscard]] Index zero() const noexcept { return zero_; }
  [[nodiscard]] Index add(Index a, Index b) const;
  /// Number of elements for a table monoid.
  [[nodiscard]] std::size_t order() const noexcept { return elements_.size(); }
  [[nodiscard]] const FinSet& elements() const noexcept { return elements_; }
  [[nodiscard]] const std::vector<FinMap>& add_table() const noexcept { return add_; }
  [[nodiscard]] double dt() const noexcept { return dt_; }
  [[nodiscard]] std::size_t horizon() const noexcept { return horizon_; }

  /// Elements over which flow laws are quantified: 0..32 for N, every element
  /// of a table, the grid for SampledReal.
  [[nodiscard]] std::vector<Index> law_times() const;
  /// Elements whose data a system stores: {1} for N, every table element.
  [[nodiscard]] std::vector<Index> structural_times() const;
  /// Element parsed from its label ("3", an element label, or a grid count).
  [[nodiscard]] Index element(const std::string& label) const;
  [[nodiscard]] std::string label(Index t) const;
  /// Real value of a time element; k*dt for SampledReal.
  [[nodiscard]] double value(Index t) const;
  /// True if table monoids are equal or both are N; SampledReal compares dt/horizon.
  friend bool operator==(const TimeMonoid&, const TimeMonoid&) = default;

  static constexpr std::size_t kDiscreteLawBound = 32;

 private:
  TimeKind kind_ = TimeKind::DiscreteNat;
  FinSet elements_;
  std::vector<FinMap> add_;
  Index zero_ = 0;
  double dt_ = 0.0;
  std::size_t horizon_ = 0;
};

/// Unit and associativity violations over law_times(); exhaustive for tables.
LawReport monoid_laws(const TimeMonoid& t);
/// Same check for a raw table, used to validate before construction.
LawReport check_table_laws(const FinSet& elements, const std::vector<FinMap>& add, Index zero);

}  // namespace polydyn
