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

#include <vector>

#include "polydyn/error.hpp"
#include "polydyn/finset.hpp"
#include "polydyn/law_report.hpp"
#include "polydyn/time_monoid.hpp"

namespace polydyn {

/// Closed system: an action of a time monoid on a finite state set. For N only
/// the step at t = 1 is stored; for a table monoid one map per element.
class ClosedSystem {
 public:
  ClosedSystem() = default;

  /// Checks shapes only (one total endomap per structural time).
  static ClosedSystem unchecked(TimeMonoid time, FinSet states, std::vector<FinMap> stored);

  [[nodiscard]] const TimeMonoid& time() const noexcept { return time_; }
  [[nodiscard]] const FinSet& states() const noexcept { return states_; }
  [[nodiscard]] const std::vector<FinMap>& stored() const noexcept { return stored_; }
  /// action(t); iterates of the step for N.
  [[nodiscard]] FinMap action(Index t) const;

  friend bool operator==(const ClosedSystem&, const ClosedSystem&) = default;

 private:
  TimeMonoid time_;
  FinSet states_;
  std::vector<FinMap> stored_;
};

/// Throws FlowViolation with (s, t, state) if the flow condition fails.
ClosedSystem mk_closed(TimeMonoid time, FinSet states, std::vector<FinMap> stored);

/// action(0) = id and action(s + t) = action(s) . action(t) over law times.
/// For N also compares stored iterates against repeated single steps.
LawReport check_flow_closed(const ClosedSystem& sys);

/// f . a(t) = b(t) . f for every structural time.
Check check_closed_morphism(const FinMap& f, const ClosedSystem& a, const ClosedSystem& b);

/// n-fold composite of an endomap (n = 0 gives the identity).
FinMap map_power(const FinMap& f, std::size_t n);

}  // namespace polydyn
