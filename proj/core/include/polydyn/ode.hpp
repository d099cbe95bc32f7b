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
#include <utility>
#include <vector>

#include "polydyn/law_report.hpp"
#include "polydyn/polynomial.hpp"
#include "polydyn/time_monoid.hpp"

namespace polydyn {

using Vec = std::vector<double>;
/// dx/dt as a function of the state and the held input vector.
using VectorField = std::function<Vec(const Vec& x, const Vec& u)>;
/// Output position of a numeric state.
using Readout = std::function<Index(const Vec& x)>;

/// One classical Runge-Kutta step of size dt with u held constant.
Vec rk4_step(const VectorField& field, const Vec& x, const Vec& u, double dt);

/// Open system on R^dim with sampled real time {k dt : k <= horizon}. The
/// adapter table inputs[i][d] gives the real input vector of direction d at
/// position i.
class OdeOpenSystem {
 public:
  OdeOpenSystem(Polynomial p, std::size_t dim, VectorField field, Readout readout, std::vector<std::vector<Vec>> inputs,
                double dt, std::size_t horizon);

  [[nodiscard]] const Polynomial& interface() const noexcept { return p_; }
  [[nodiscard]] const TimeMonoid& time() const noexcept { return time_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

  [[nodiscard]] Index output(const Vec& x) const;
  [[nodiscard]] const Vec& input(Index position, Index direction) const { return inputs_.at(position).at(direction); }
  /// Update at grid time k: k RK4 steps with the input of `direction` held.
  /// Throws NonFiniteState if the state diverges.
  [[nodiscard]] Vec update(std::size_t k, const Vec& x, Index direction) const;
  /// All k+1 grid points of the same integration.
  [[nodiscard]] std::vector<Vec> path(std::size_t k, const Vec& x, const Vec& u) const;

 private:
  Polynomial p_;
  std::size_t dim_;
  VectorField field_;
  Readout readout_;
  std::vector<std::vector<Vec>> inputs_;
  TimeMonoid time_;
};

OdeOpenSystem ode_open(Polynomial p, std::size_t dim, VectorField field, Readout readout,
                       std::vector<std::vector<Vec>> inputs, double dt, std::size_t horizon);
/// Closed field over the interface y; the input vector is empty.
OdeOpenSystem ode_closed(std::size_t dim, std::function<Vec(const Vec&)> field, double dt, std::size_t horizon);

/// Closure of a numeric system by a section: x |-> update(k, x, sigma(out(x))).
class NumericFlow {
 public:
  NumericFlow(const OdeOpenSystem& sys, Section sigma) : sys_(&sys), sigma_(std::move(sigma)) {}
  [[nodiscard]] Vec action(std::size_t k, const Vec& x) const;
  /// action(j, x) for j = 0..k.
  [[nodiscard]] std::vector<Vec> orbit(std::size_t k, const Vec& x) const;
  [[nodiscard]] const OdeOpenSystem& system() const noexcept { return *sys_; }

 private:
  const OdeOpenSystem* sys_;
  Section sigma_;
};

/// Max-norm distance.
double distance(const Vec& a, const Vec& b);

/// Approximate flow condition on the grid from each sample point: action(0)
/// is the identity and |action(s+t,x) - action(s, action(t,x))| <= tol for all
/// s + t <= horizon. The report is marked approximate.
LawReport check_flow_numeric(const NumericFlow& flow, const std::vector<Vec>& samples, double tol = 1e-6);

}  // namespace polydyn
