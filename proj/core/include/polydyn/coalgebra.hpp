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

#include <memory>
#include <string>
#include <vector>

#include "polydyn/nested.hpp"
#include "polydyn/open_system.hpp"
#include "polydyn/random_system.hpp"

namespace polydyn {

enum class MonadKind { Identity, Distribution };

std::string_view to_string(MonadKind kind);

/// Monad on finite sets. T-values over X are stored as distributions on X;
/// for Identity only diracs are admissible.
struct MonadSpec {
  MonadKind kind = MonadKind::Identity;

  [[nodiscard]] Dist unit(std::size_t n, Index x) const { return dirac(n, x); }
  /// Kleisli extension of k applied to d.
  [[nodiscard]] Dist bind(const Dist& d, const Kernel& k) const;
  /// True if d is a T-value (always for Distribution, diracs for Identity).
  [[nodiscard]] bool admits(const Dist& d) const;
  /// Tf: pushforward, which for Identity is application.
  [[nodiscard]] Dist map(const FinMap& f, const Dist& d, std::size_t cod) const { return pushforward(f, d, cod); }

  friend bool operator==(const MonadSpec&, const MonadSpec&) = default;
};

inline MonadSpec identity_monad() { return {MonadKind::Identity}; }
inline MonadSpec distribution_monad() { return {MonadKind::Distribution}; }

/// Left unit, right unit and associativity on every carrier size up to
/// max_carrier, against the deterministic kernels and their mixtures with the
/// uniform kernel.
LawReport monad_laws(const MonadSpec& monad, std::size_t max_carrier = 4);

/// Open system whose update lands in T: upd(t)[s][e] is a T-value over S.
class PTCoalgebra {
 public:
  PTCoalgebra() = default;

  /// Shape validation plus admissibility of every update value.
  static PTCoalgebra unchecked(MonadSpec monad, std::shared_ptr<const Polynomial> interface, TimeMonoid time,
                               FinSet states, std::vector<FinMap> out, std::vector<std::vector<std::vector<Dist>>> upd);

  [[nodiscard]] const MonadSpec& monad() const noexcept { return monad_; }
  [[nodiscard]] const Polynomial& interface() const { return *interface_; }
  [[nodiscard]] const std::shared_ptr<const Polynomial>& interface_ptr() const { return interface_; }
  [[nodiscard]] const TimeMonoid& time() const noexcept { return time_; }
  [[nodiscard]] const FinSet& states() const noexcept { return states_; }
  [[nodiscard]] std::size_t num_states() const noexcept { return states_.size(); }
  [[nodiscard]] std::size_t slot(Index t) const { return time_.is_discrete() ? 0 : t; }
  [[nodiscard]] const FinMap& out(Index t) const { return out_.at(slot(t)); }
  [[nodiscard]] const Dist& update(Index t, Index s, Index e) const { return upd_.at(slot(t)).at(s).at(e); }
  [[nodiscard]] const std::vector<FinMap>& out_table() const noexcept { return out_; }
  [[nodiscard]] const std::vector<std::vector<std::vector<Dist>>>& upd_table() const noexcept { return upd_; }

  friend bool operator==(const PTCoalgebra& a, const PTCoalgebra& b);

 private:
  MonadSpec monad_;
  std::shared_ptr<const Polynomial> interface_;
  TimeMonoid time_;
  FinSet states_;
  std::vector<FinMap> out_;
  std::vector<std::vector<std::vector<Dist>>> upd_;
};

/// Validated constructor; table time is flow-checked and fails with
/// KleisliFlowViolation. SampledReal is refused with UnsupportedTime.
PTCoalgebra mk_pt_coalgebra(MonadSpec monad, const Polynomial& p, TimeMonoid time, FinSet states,
                            std::vector<FinMap> out, std::vector<std::vector<std::vector<Dist>>> upd,
                            std::size_t cap = kDefaultCap);

/// Identity-monad coalgebra of an open system, and back.
PTCoalgebra coalg_from_open(const OpenSystem& sys);
OpenSystem open_from_coalg(const PTCoalgebra& c);

/// Like simulate_open; the next state is drawn from the update value after
/// the policy has chosen its direction, both from one splitmix64 stream.
Trajectory simulate_coalg(const PTCoalgebra& c, Index x0, const Policy& policy, std::size_t steps,
                          std::uint64_t seed = 0);

/// Closure by a section as a family of kernels S ~> S.
class KleisliClosure {
 public:
  KleisliClosure(TimeMonoid time, std::vector<Kernel> stored);

  [[nodiscard]] const TimeMonoid& time() const noexcept { return time_; }
  [[nodiscard]] const std::vector<Kernel>& stored() const noexcept { return stored_; }
  /// Kleisli power of the one-step kernel for N, the stored kernel otherwise.
  [[nodiscard]] Kernel at(Index t) const;

 private:
  TimeMonoid time_;
  std::vector<Kernel> stored_;
};

/// Row s of the step at t: upd(t)(s, sigma(out(t, s))).
Kernel kleisli_step(const PTCoalgebra& c, const Section& sigma, Index t);
KleisliClosure kleisli_closure(const PTCoalgebra& c, const Section& sigma);

/// closure(0) is the Kleisli identity and closure(s + t) = closure(s) . closure(t)
/// for every section; for N over s + t within the law bound.
LawReport check_kleisli_flow(const PTCoalgebra& c, std::size_t cap = kDefaultCap);

/// Output compatibility and Tf . step_from = step_to . f for all t and sections.
Check check_coalg_morphism(const FinMap& f, const PTCoalgebra& from, const PTCoalgebra& to,
                           std::size_t cap = kDefaultCap);

PTCoalgebra reindex_coalg(const Lens& phi, const PTCoalgebra& c);

/// Coalgebra S -> p T S: out(s) and one T-value per direction.
struct ClassicalCoalgebra {
  MonadSpec monad;
  std::shared_ptr<const Polynomial> interface;
  FinSet states;
  FinMap out;
  std::vector<std::vector<Dist>> next;

  friend bool operator==(const ClassicalCoalgebra& a, const ClassicalCoalgebra& b);
};

/// Throws TimeNotDiscrete unless c runs on N.
ClassicalCoalgebra to_classical(const PTCoalgebra& c);
PTCoalgebra from_classical(const ClassicalCoalgebra& k);
/// out_to(f s) = out_from(s) and next_to(f s)[d] = Tf(next_from(s)[d]).
Check check_classical_morphism(const FinMap& f, const ClassicalCoalgebra& from, const ClassicalCoalgebra& to);

/// Label of a T-value: the state label for a dirac under Identity, otherwise
/// "{x:w,...}" over the support.
std::string tvalue_label(const MonadSpec& monad, const FinSet& states, const Dist& d);
/// "(i,[v_1,...])" with one T-value label per direction, matching the
/// eval_polynomial encoding for the Identity monad.
std::string classical_label(const ClassicalCoalgebra& k, Index s);

struct CoalgBundle {
  PTCoalgebra top;
  PTCoalgebra base;
  FinMap proj;
};

/// T proj . top(t, sigma) = base(t, varsigma) . proj for all t, sigma, varsigma.
LawReport coalg_bundle_check(const FinMap& proj, const PTCoalgebra& top, const PTCoalgebra& base,
                             std::size_t cap = kDefaultCap);
/// Throws BundleSquareBroken.
CoalgBundle mk_coalg_bundle(PTCoalgebra top, PTCoalgebra base, FinMap proj, std::size_t cap = kDefaultCap);

/// Forced lift of the nesting cube; the lifted square is
/// T proj(top_u(w, d)) = base_u(lift(w, d)). Throws NestingConditionFails.
Lift coalg_nesting_lift(const NestedPoly& nested, const CoalgBundle& bundle, Index t);

/// (f, phi) between coalgebra bundles: phi a base morphism, f a top morphism
/// and proj_to . f = phi . proj_from.
Check check_total_coalg_morphism(const TotalMorphism& m, const CoalgBundle& from, const CoalgBundle& to,
                                 std::size_t cap = kDefaultCap);
TotalMorphism compose_coalg_total_morphisms(const TotalMorphism& second, const TotalMorphism& first);

}  // namespace polydyn
