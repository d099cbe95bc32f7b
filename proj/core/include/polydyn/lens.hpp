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
#include <memory>
#include <string>
#include <vector>

#include "polydyn/polynomial.hpp"

namespace polydyn {

/// Morphism of polynomials p -> q: a forward map on positions and, over each
/// position i of p, a backward map q[fwd(i)] -> p[i].
class Lens {
 public:
  Lens() = default;
  /// Validates that every backward map has domain q[fwd(i)] and codomain p[i].
  Lens(std::shared_ptr<const Polynomial> dom, std::shared_ptr<const Polynomial> cod, FinMap fwd,
       std::vector<FinMap> bwd);
  Lens(const Polynomial& dom, const Polynomial& cod, FinMap fwd, std::vector<FinMap> bwd);

  /// Label-keyed construction: fwd maps position labels, bwd[i] maps q-direction
  /// labels to p-direction labels.
  static Lens make(const Polynomial& dom, const Polynomial& cod, const std::map<std::string, std::string>& fwd,
                   const std::map<std::string, std::map<std::string, std::string>>& bwd);

  [[nodiscard]] const Polynomial& dom() const { return *dom_; }
  [[nodiscard]] const Polynomial& cod() const { return *cod_; }
  [[nodiscard]] const std::shared_ptr<const Polynomial>& dom_ptr() const { return dom_; }
  [[nodiscard]] const std::shared_ptr<const Polynomial>& cod_ptr() const { return cod_; }
  [[nodiscard]] const FinMap& fwd() const noexcept { return fwd_; }
  [[nodiscard]] const std::vector<FinMap>& bwd() const noexcept { return bwd_; }
  [[nodiscard]] Index fwd(Index i) const { return fwd_.at(i); }
  [[nodiscard]] Index bwd(Index i, Index e) const { return bwd_.at(i).at(e); }

  friend bool operator==(const Lens& a, const Lens& b);

 private:
  std::shared_ptr<const Polynomial> dom_;
  std::shared_ptr<const Polynomial> cod_;
  FinMap fwd_;
  std::vector<FinMap> bwd_;
};

Lens identity_lens(const Polynomial& p);
/// g after f; throws InterfaceMismatch unless f.cod() == g.dom().
Lens compose_lenses(const Lens& g, const Lens& f);
Lens tensor_lenses(const Lens& f, const Lens& g);

/// Canonical isomorphisms for the unit y of the parallel product.
Lens tensor_right_unitor(const Polynomial& p);      // p (x) y -> p
Lens tensor_right_unitor_inv(const Polynomial& p);  // p -> p (x) y
Lens tensor_left_unitor(const Polynomial& p);       // y (x) p -> p
Lens tensor_left_unitor_inv(const Polynomial& p);   // p -> y (x) p

/// Canonical isomorphisms for the unit y of the substitution product.
Lens composite_left_unitor(const Polynomial& q);       // y <| q -> q
Lens composite_left_unitor_inv(const Polynomial& q);   // q -> y <| q
Lens composite_right_unitor(const Polynomial& p);      // p <| y -> p
Lens composite_right_unitor_inv(const Polynomial& p);  // p -> p <| y

/// sum over fwd maps f of prod_i |p[i]|^{|q[f(i)]|}, saturating.
std::size_t count_lenses(const Polynomial& p, const Polynomial& q);
/// Every lens p -> q, forward maps in lexicographic order, backward maps in
/// lexicographic order within each forward map.
std::vector<Lens> enumerate_lenses(const Polynomial& p, const Polynomial& q, std::size_t cap = kDefaultCap);

/// Canonical label of a lens, used as a position name of the internal hom.
std::string lens_label(const Lens& f);

/// Internal hom [q, p]: positions are the lenses q -> p, the fiber over phi is
/// sum_{i in q(1)} p[phi(i)] labelled "(i,e)".
Polynomial internal_hom(const Polynomial& q, const Polynomial& p, std::size_t cap = kDefaultCap);

/// Internal hom together with the lens named by each of its positions.
struct InternalHom {
  std::shared_ptr<const Polynomial> poly;
  std::vector<Lens> lenses;
};
InternalHom make_internal_hom(const Polynomial& q, const Polynomial& p, std::size_t cap = kDefaultCap);

/// The currying bijection Poly(r (x) q, p) -> Poly(r, [q, p]) and its inverse.
Lens curry(const Lens& f, const Polynomial& r, const Polynomial& q, const Polynomial& p, const InternalHom& hom);
Lens uncurry(const Lens& g, const Polynomial& r, const Polynomial& q, const Polynomial& p, const InternalHom& hom);

/// phi^# after phi_1^* tau: transports a section of the codomain to the domain.
Section transport_section(const Lens& phi, const Section& tau);

std::string describe(const Lens& f);

}  // namespace polydyn
