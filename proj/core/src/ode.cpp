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


#include "polydyn/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "polydyn/error.hpp"

namespace polydyn {

namespace {

Vec axpy(const Vec& x, double a, const Vec& k) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * k.at(i);
  return out;
}

void require_finite(const Vec& x, std::size_t k) {
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteState, "state is not finite after step " + std::to_string(k));
  }
}

std::string render(const Vec& x) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ']';
  return os.str();
}

}  // namespace

Vec rk4_step(const VectorField& field, const Vec& x, const Vec& u, double dt) {
  Vec k1 = field(x, u);
  Vec k2 = field(axpy(x, dt / 2, k1), u);
  Vec k3 = field(axpy(x, dt / 2, k2), u);
  Vec k4 = field(axpy(x, dt, k3), u);
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + dt / 6 * (k1.at(i) + 2 * k2.at(i) + 2 * k3.at(i) + k4.at(i));
  return out;
}

OdeOpenSystem::OdeOpenSystem(Polynomial p, std::size_t dim, VectorField field, Readout readout,
                             std::vector<std::vector<Vec>> inputs, double dt, std::size_t horizon)
    : p_(std::move(p)),
      dim_(dim),
      field_(std::move(field)),
      readout_(std::move(readout)),
      inputs_(std::move(inputs)),
      time_(TimeMonoid::sampled_real(dt, horizon)) {
  if (inputs_.size() != p_.num_positions()) throw Error(ErrorKind::MissingFiber, "input adapter must list every position");
  for (Index i = 0; i < inputs_.size(); ++i) {
    if (inputs_[i].size() != p_.fiber(i).size()) {
      throw Error(ErrorKind::MissingFiber, "input adapter misses directions at '" + p_.positions().label(i) + "'");
    }
  }
}

Index OdeOpenSystem::output(const Vec& x) const {
  Index i = readout_(x);
  if (i >= p_.num_positions()) throw Error(ErrorKind::UnknownPosition, "readout left the interface positions");
  return i;
}

std::vector<Vec> OdeOpenSystem::path(std::size_t k, const Vec& x, const Vec& u) const {
  if (x.size() != dim_) throw Error(ErrorKind::InterfaceMismatch, "state has the wrong dimension");
  std::vector<Vec> pts;
  pts.reserve(k + 1);
  pts.push_back(x);
  for (std::size_t j = 0; j < k; ++j) {
    pts.push_back(rk4_step(field_, pts.back(), u, time_.dt()));
    require_finite(pts.back(), j + 1);
  }
  return pts;
}

Vec OdeOpenSystem::update(std::size_t k, const Vec& x, Index direction) const {
  return path(k, x, input(output(x), direction)).back();
}

OdeOpenSystem ode_open(Polynomial p, std::size_t dim, VectorField field, Readout readout,
                       std::vector<std::vector<Vec>> inputs, double dt, std::size_t horizon) {
  return OdeOpenSystem(std::move(p), dim, std::move(field), std::move(readout), std::move(inputs), dt, horizon);
}

OdeOpenSystem ode_closed(std::size_t dim, std::function<Vec(const Vec&)> field, double dt, std::size_t horizon) {
  return OdeOpenSystem(
      identity_polynomial(), dim, [f = std::move(field)](const Vec& x, const Vec&) { return f(x); },
      [](const Vec&) -> Index { return 0; }, {{Vec{}}}, dt, horizon);
}

Vec NumericFlow::action(std::size_t k, const Vec& x) const { return orbit(k, x).back(); }

std::vector<Vec> NumericFlow::orbit(std::size_t k, const Vec& x) const {
  Index i = sys_->output(x);
  return sys_->path(k, x, sys_->input(i, sigma_.choice.at(i)));
}

double distance(const Vec& a, const Vec& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b.at(i)));
  return d;
}

LawReport check_flow_numeric(const NumericFlow& flow, const std::vector<Vec>& samples, double tol) {
  constexpr std::size_t kMaxReported = 100;
  LawReport report("flow-numeric");
  report.set_approximate();
  const std::size_t n = flow.system().time().horizon();
  for (const Vec& x : samples) {
    std::vector<Vec> base = flow.orbit(n, x);
    report.add_cases();
    if (distance(base[0], x) > tol) report.fail("identity", {{"x", render(x)}});
    for (std::size_t t = 0; t <= n; ++t) {
      // action(s, action(t, x)) for every s <= n - t in one integration.
      std::vector<Vec> tail = flow.orbit(n - t, base[t]);
      for (std::size_t s = 0; s + t <= n; ++s) {
        report.add_cases();
        double err = distance(base[s + t], tail[s]);
        if (err > tol) {
          report.fail("composition", {{"x", render(x)},
                                      {"s", std::to_string(s)},
                                      {"t", std::to_string(t)},
                                      {"error", std::to_string(err)}});
          if (report.failures().size() >= kMaxReported) return report;
        }
      }
    }
  }
  return report;
}

}  // namespace polydyn
