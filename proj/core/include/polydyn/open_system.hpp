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

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polydyn/closed_system.hpp"
#include "polydyn/lens.hpp"
#include "polydyn/probability.hpp"

namespace polydyn {

/// Open system over an interface p: out(t) : S -> p(1) and, for each state s,
/// upd(t)[s] : p[out(t, s)] -> S. Stored per structural time of the monoid
/// (only t = 1 for N).
class OpenSystem {
 public:
  OpenSystem() = default;

  /// Shape validation only: totality and fiber domains.
  static OpenSystem unchecked(std::shared_ptr<const Polynomial> interface, TimeMonoid time, FinSet states,
                              std::vector<FinMap> out, std::vector<std::vector<FinMap>> upd);

  [[nodiscard]] const Polynomial& interface() const { return *interface_; }
  [[nodiscard]] const std::shared_ptr<const Polynomial>& interface_ptr() const { return interface_; }
  [[nodiscard]] const TimeMonoid& time() const noexcept { return time_; }
  [[nodiscard]] const FinSet& states() const noexcept { return states_; }
  [[nodiscard]] std::size_t num_states() const noexcept { return states_.size(); }

  /// Slot of t in the stored tables.
  [[nodiscard]] std::size_t slot(Index t) const { return time_.is_discrete() ? 0 : t; }
  [[nodiscard]] const FinMap& out(Index t) const { return out_.at(slot(t)); }
  [[nodiscard]] const std::vector<FinMap>& upd(Index t) const { return upd_.at(slot(t)); }
  [[nodiscard]] Index update(Index t, Index s, Index e) const { return upd_.at(slot(t)).at(s).at(e); }
  [[nodiscard]] const std::vector<FinMap>& out_table() const noexcept { return out_; }
  [[nodiscard]] const std::vector<std::vector<FinMap>>& upd_table() const noexcept { return upd_; }

  friend bool operator==(const OpenSystem& a, const OpenSystem& b);

 private:
  std::shared_ptr<const Polynomial> interface_;
  TimeMonoid time_;
  FinSet states_;
  std::vector<FinMap> out_;
  std::vector<std::vector<FinMap>> upd_;
};

/// Discrete-time system from its one-step data; valid by construction.
OpenSystem mk_open_discrete(const Polynomial& p, FinSet states, FinMap out, std::vector<FinMap> upd);
/// General constructor; for table time the flow condition is checked for every
/// section and FlowViolation is thrown on the first failure.
OpenSystem mk_open(const Polynomial& p, TimeMonoid time, FinSet states, std::vector<FinMap> out,
                   std::vector<std::vector<FinMap>> upd, std::size_t cap = kDefaultCap);

/// s |-> upd(t)(s, sigma(out(t, s))) at one stored time.
FinMap closure_step(const OpenSystem& sys, const Section& sigma, Index t);
/// Closure by sigma; throws FlowViolation when the result is not a flow.
ClosedSystem closure(const OpenSystem& sys, const Section& sigma);
ClosedSystem closure_unchecked(const OpenSystem& sys, const Section& sigma);

/// Flow condition for every section; vacuous pass with a warning if p has none.
LawReport check_flow_open(const OpenSystem& sys, std::size_t cap = kDefaultCap);

/// Naturality squares for every structural time and section, plus output
/// compatibility psi_o(t) . f = theta_o(t).
Check check_open_morphism(const FinMap& f, const OpenSystem& from, const OpenSystem& to,
                          std::size_t cap = kDefaultCap);

/// out' = phi_1 . out, upd'(s, e) = upd(s, phi#[out(s)](e)).
OpenSystem reindex_open(const Lens& phi, const OpenSystem& sys);

/// Parallel product over p (x) q; states labelled "(s,s')".
OpenSystem tensor_systems(const OpenSystem& a, const OpenSystem& b);

/// Closed system as a system over y, and back.
OpenSystem open_from_closed(const ClosedSystem& c);
ClosedSystem closed_from_open_y(const OpenSystem& sys);

/// Input choice for simulation: returns the chosen direction index given the
/// step number, state and current output position. Policies generalize
/// sections and carry no law claims.
using PolicyFn = std::function<Index(std::size_t step, Index state, Index position, SplitMix64& prng)>;

struct Policy {
  std::string name;
  PolicyFn choose;
};

Policy section_policy(const Section& sigma);
/// Uniform over the fiber at the current position.
Policy uniform_policy(const Polynomial& p);
/// One distribution per position over its fiber.
Policy distribution_policy(std::vector<Dist> per_position);

struct TrajectoryRow {
  std::size_t step = 0;
  Index time = 0;
  Index state = 0;
  Index position = 0;
  std::optional<Index> input;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
};

/// Runs `steps` updates from x0 using the element `dt` of the monoid (1 for N).
/// Throws PolicyOutOfFiber if the policy picks outside the current fiber.
Trajectory simulate_open(const OpenSystem& sys, Index x0, const Policy& policy, std::size_t steps,
                         std::uint64_t seed = 0);
/// The element used as one simulation step: 1 for N, the element "1" of a table.
Index simulation_step(const TimeMonoid& time);

/// CSV with columns step,time,state,position,input.
std::string trajectory_csv(const OpenSystem& sys, const Trajectory& traj);
std::string trajectory_csv(const FinSet& states, const Polynomial& p, const TimeMonoid& time, const Trajectory& traj);

}  // namespace polydyn
