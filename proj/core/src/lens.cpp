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

#include "polydyn/lens.hpp"

#include <utility>

#include "polydyn/error.hpp"

namespace polydyn {

namespace {

std::shared_ptr<const Polynomial> share(const Polynomial& p) { return std::make_shared<const Polynomial>(p); }

// For a product set built by product(a, b): component indices of each element.
std::vector<std::pair<Index, Index>> product_components(const FinSet& prod, const FinSet& a, const FinSet& b) {
  std::vector<std::pair<Index, Index>> out(prod.size());
  for (Index i = 0; i < a.size(); ++i)
    for (Index j = 0; j < b.size(); ++j) out[product_index(prod, a, b, i, j)] = {i, j};
  return out;
}

}  // namespace

Lens::Lens(std::shared_ptr<const Polynomial> dom, std::shared_ptr<const Polynomial> cod, FinMap fwd,
           std::vector<FinMap> bwd)
    : dom_(std::move(dom)), cod_(std::move(cod)), fwd_(std::move(fwd)), bwd_(std::move(bwd)) {
  const Polynomial& p = *dom_;
  const Polynomial& q = *cod_;
  if (fwd_.size() != p.num_positions() || bwd_.size() != p.num_positions()) {
    throw Error(ErrorKind::InterfaceMismatch, "lens components do not cover the domain positions");
  }
  for (Index i = 0; i < fwd_.size(); ++i) {
    if (fwd_[i] >= q.num_positions()) throw Error(ErrorKind::UnknownPosition, "forward map leaves the codomain");
    if (bwd_[i].size() != q.fiber(fwd_[i]).size()) {
      throw Error(ErrorKind::InterfaceMismatch,
                  "backward map at '" + p.positions().label(i) + "' has the wrong domain");
    }
    for (Index e : bwd_[i]) {
      if (e >= p.fiber(i).size()) {
        throw Error(ErrorKind::InterfaceMismatch,
                    "backward map at '" + p.positions().label(i) + "' leaves p[" + p.positions().label(i) + "]");
      }
    }
  }
}

Lens::Lens(const Polynomial& dom, const Polynomial& cod, FinMap fwd, std::vector<FinMap> bwd)
    : Lens(share(dom), share(cod), std::move(fwd), std::move(bwd)) {}

Lens Lens::make(const Polynomial& dom, const Polynomial& cod, const std::map<std::string, std::string>& fwd,
                const std::map<std::string, std::map<std::string, std::string>>& bwd) {
  FinMap f(dom.num_positions());
  std::vector<FinMap> b(dom.num_positions());
  for (Index i = 0; i < dom.num_positions(); ++i) {
    const std::string& pos = dom.positions().label(i);
    auto it = fwd.find(pos);
    if (it == fwd.end()) throw Error(ErrorKind::MissingFiber, "lens forward map missing '" + pos + "'");
    f[i] = cod.positions().index_of(it->second);
    const FinSet& qfib = cod.fiber(f[i]);
    b[i].resize(qfib.size());
    auto bt = bwd.find(pos);
    if (qfib.empty()) continue;
    if (bt == bwd.end()) throw Error(ErrorKind::MissingFiber, "lens backward map missing at '" + pos + "'");
    for (Index e = 0; e < qfib.size(); ++e) {
      auto et = bt->second.find(qfib.label(e));
      if (et == bt->second.end()) {
        throw Error(ErrorKind::MissingFiber, "lens backward map at '" + pos + "' misses '" + qfib.label(e) + "'");
      }
      b[i][e] = dom.fiber(i).index_of(et->second);
    }
  }
  return Lens(dom, cod, std::move(f), std::move(b));
}

bool operator==(const Lens& a, const Lens& b) {
  if (a.fwd_ != b.fwd_ || a.bwd_ != b.bwd_) return false;
  return (a.dom_ == b.dom_ || *a.dom_ == *b.dom_) && (a.cod_ == b.cod_ || *a.cod_ == *b.cod_);
}

Lens identity_lens(const Polynomial& p) {
  auto shared = share(p);
  std::vector<FinMap> bwd;
  for (const auto& f : p.fibers()) bwd.push_back(identity_map(f.size()));
  return Lens(shared, shared, identity_map(p.num_positions()), std::move(bwd));
}

Lens compose_lenses(const Lens& g, const Lens& f) {
  if (!(f.cod_ptr() == g.dom_ptr() || f.cod() == g.dom())) {
    throw Error(ErrorKind::InterfaceMismatch, "codomain of the first lens is not the domain of the second");
  }
  FinMap fwd(f.fwd().size());
  std::vector<FinMap> bwd(f.fwd().size());
  for (Index i = 0; i < fwd.size(); ++i) {
    Index j = f.fwd(i);
    fwd[i] = g.fwd(j);
    const FinMap& gb = g.bwd()[j];
    bwd[i].resize(gb.size());
    for (Index e = 0; e < gb.size(); ++e) bwd[i][e] = f.bwd(i, gb[e]);
  }
  return Lens(f.dom_ptr(), g.cod_ptr(), std::move(fwd), std::move(bwd));
}

Lens tensor_lenses(const Lens& f, const Lens& g) {
  auto dom = share(tensor(f.dom(), g.dom()));
  auto cod = share(tensor(f.cod(), g.cod()));
  FinMap fwd(dom->num_positions());
  std::vector<FinMap> bwd(dom->num_positions());
  for (Index i = 0; i < f.dom().num_positions(); ++i) {
    for (Index j = 0; j < g.dom().num_positions(); ++j) {
      Index ij = product_index(dom->positions(), f.dom().positions(), g.dom().positions(), i, j);
      Index fi = f.fwd(i);
      Index gj = g.fwd(j);
      Index target = product_index(cod->positions(), f.cod().positions(), g.cod().positions(), fi, gj);
      fwd[ij] = target;
      const FinSet& cod_fib = cod->fiber(target);
      const FinSet& dom_fib = dom->fiber(ij);
      bwd[ij].resize(cod_fib.size());
      auto parts = product_components(cod_fib, f.cod().fiber(fi), g.cod().fiber(gj));
      for (Index e = 0; e < cod_fib.size(); ++e) {
        auto [a, b] = parts[e];
        bwd[ij][e] = product_index(dom_fib, f.dom().fiber(i), g.dom().fiber(j), f.bwd(i, a), g.bwd(j, b));
      }
    }
  }
  return Lens(std::move(dom), std::move(cod), std::move(fwd), std::move(bwd));
}

namespace {

// p (x) y -> p when `right`, y (x) p -> p otherwise.
Lens unitor(const Polynomial& p, bool right) {
  Polynomial y = identity_polynomial();
  auto tp = share(right ? tensor(p, y) : tensor(y, p));
  auto pp = share(p);
  FinMap fwd(tp->num_positions());
  std::vector<FinMap> bwd(tp->num_positions());
  for (Index i = 0; i < p.num_positions(); ++i) {
    Index ti = right ? product_index(tp->positions(), p.positions(), y.positions(), i, 0)
                     : product_index(tp->positions(), y.positions(), p.positions(), 0, i);
    fwd[ti] = i;
    bwd[ti].resize(p.fiber(i).size());
    for (Index d = 0; d < p.fiber(i).size(); ++d) {
      bwd[ti][d] = right ? product_index(tp->fiber(ti), p.fiber(i), y.fiber(0), d, 0)
                         : product_index(tp->fiber(ti), y.fiber(0), p.fiber(i), 0, d);
    }
  }
  return Lens(std::move(tp), std::move(pp), std::move(fwd), std::move(bwd));
}

// Inverse of a lens whose forward map and every backward map are bijections.
Lens invert_iso(const Lens& f) {
  const Polynomial& p = f.dom();
  const Polynomial& q = f.cod();
  FinMap fwd(q.num_positions());
  for (Index i = 0; i < p.num_positions(); ++i) fwd[f.fwd(i)] = i;
  std::vector<FinMap> bwd(q.num_positions());
  for (Index j = 0; j < q.num_positions(); ++j) {
    Index i = fwd[j];
    bwd[j].resize(p.fiber(i).size());
    for (Index e = 0; e < f.bwd()[i].size(); ++e) bwd[j][f.bwd(i, e)] = e;
  }
  return Lens(f.cod_ptr(), f.dom_ptr(), std::move(fwd), std::move(bwd));
}

}  // namespace

Lens tensor_right_unitor(const Polynomial& p) { return unitor(p, true); }
Lens tensor_right_unitor_inv(const Polynomial& p) { return invert_iso(unitor(p, true)); }
Lens tensor_left_unitor(const Polynomial& p) { return unitor(p, false); }
Lens tensor_left_unitor_inv(const Polynomial& p) { return invert_iso(unitor(p, false)); }

Lens composite_left_unitor(const Polynomial& q) {
  // y <| q has positions (*, [j]) and fibers (*, e).
  auto yq = share(composite(identity_polynomial(), q));
  auto qq = share(q);
  FinMap fwd(yq->num_positions());
  std::vector<FinMap> bwd(yq->num_positions());
  for (Index j = 0; j < q.num_positions(); ++j) {
    std::vector<std::string> image{q.positions().label(j)};
    Index pos = yq->positions().index_of(encode_pair("*", encode_list(image)));
    fwd[pos] = j;
    bwd[pos].resize(q.fiber(j).size());
    for (Index e = 0; e < q.fiber(j).size(); ++e) {
      bwd[pos][e] = yq->fiber(pos).index_of(encode_pair("*", q.fiber(j).label(e)));
    }
  }
  return Lens(std::move(yq), std::move(qq), std::move(fwd), std::move(bwd));
}

Lens composite_left_unitor_inv(const Polynomial& q) { return invert_iso(composite_left_unitor(q)); }

Lens composite_right_unitor(const Polynomial& p) {
  // p <| y has positions (i, [*,...,*]) and fibers (d, *).
  auto py = share(composite(p, identity_polynomial()));
  auto pp = share(p);
  FinMap fwd(py->num_positions());
  std::vector<FinMap> bwd(py->num_positions());
  for (Index i = 0; i < p.num_positions(); ++i) {
    std::vector<std::string> stars(p.fiber(i).size(), "*");
    Index pos = py->positions().index_of(encode_pair(p.positions().label(i), encode_list(stars)));
    fwd[pos] = i;
    bwd[pos].resize(p.fiber(i).size());
    for (Index d = 0; d < p.fiber(i).size(); ++d) {
      bwd[pos][d] = py->fiber(pos).index_of(encode_pair(p.fiber(i).label(d), "*"));
    }
  }
  return Lens(std::move(py), std::move(pp), std::move(fwd), std::move(bwd));
}

Lens composite_right_unitor_inv(const Polynomial& p) { return invert_iso(composite_right_unitor(p)); }

std::size_t count_lenses(const Polynomial& p, const Polynomial& q) {
  // Per position i, the number of lenses restricted to i is sum_j |p[i]|^{|q[j]|};
  // the total is the product over positions.
  std::size_t total = 1;
  for (Index i = 0; i < p.num_positions(); ++i) {
    std::size_t local = 0;
    for (Index j = 0; j < q.num_positions(); ++j) {
      local = saturating_add(local, saturating_pow(p.fiber(i).size(), q.fiber(j).size()));
    }
    total = saturating_mul(total, local);
  }
  return total;
}

std::vector<Lens> enumerate_lenses(const Polynomial& p, const Polynomial& q, std::size_t cap) {
  require_within_cap(count_lenses(p, q), cap, "lens enumeration");
  auto dom = share(p);
  auto cod = share(q);
  std::vector<Lens> out;
  const std::size_t n = p.num_positions();
  std::vector<Index> fwd(n, 0);
  std::vector<std::size_t> fwd_radix(n, q.num_positions());
  if (n > 0 && q.num_positions() == 0) return out;
  do {
    // Backward components: for each i, a function q[fwd(i)] -> p[i], flattened.
    std::vector<std::size_t> radices;
    bool impossible = false;
    for (Index i = 0; i < n; ++i) {
      for (Index e = 0; e < q.fiber(fwd[i]).size(); ++e) {
        radices.push_back(p.fiber(i).size());
        if (p.fiber(i).empty()) impossible = true;
      }
    }
    if (impossible) continue;
    std::vector<Index> digits(radices.size(), 0);
    do {
      std::vector<FinMap> bwd(n);
      std::size_t k = 0;
      for (Index i = 0; i < n; ++i) {
        bwd[i].assign(digits.begin() + static_cast<std::ptrdiff_t>(k),
                      digits.begin() + static_cast<std::ptrdiff_t>(k + q.fiber(fwd[i]).size()));
        k += q.fiber(fwd[i]).size();
      }
      out.emplace_back(dom, cod, fwd, std::move(bwd));
    } while (next_odometer(digits, radices));
  } while (next_odometer(fwd, fwd_radix));
  return out;
}

std::string lens_label(const Lens& f) {
  std::vector<std::string> fwd;
  std::vector<std::string> bwd;
  for (Index i = 0; i < f.fwd().size(); ++i) {
    fwd.push_back(f.cod().positions().label(f.fwd(i)));
    std::vector<std::string> back;
    for (Index e : f.bwd()[i]) back.push_back(f.dom().fiber(i).label(e));
    bwd.push_back(encode_list(back));
  }
  return "<" + encode_list(fwd) + ";" + encode_list(bwd) + ">";
}

Polynomial internal_hom(const Polynomial& q, const Polynomial& p, std::size_t cap) {
  return *make_internal_hom(q, p, cap).poly;
}

InternalHom make_internal_hom(const Polynomial& q, const Polynomial& p, std::size_t cap) {
  std::vector<Lens> lenses = enumerate_lenses(q, p, cap);
  std::vector<std::string> labels;
  labels.reserve(lenses.size());
  for (const auto& l : lenses) labels.push_back(lens_label(l));
  FinSet positions(labels);
  std::vector<FinSet> fibers(positions.size());
  std::vector<Lens> ordered(positions.size());
  for (std::size_t k = 0; k < lenses.size(); ++k) {
    Index pos = positions.index_of(labels[k]);
    std::vector<std::string> dirs;
    for (Index i = 0; i < q.num_positions(); ++i) {
      for (const auto& e : p.fiber(lenses[k].fwd(i))) dirs.push_back(encode_pair(q.positions().label(i), e));
    }
    fibers[pos] = FinSet(std::move(dirs));
    ordered[pos] = std::move(lenses[k]);
  }
  InternalHom hom;
  hom.poly = share(Polynomial(std::move(positions), std::move(fibers)));
  hom.lenses = std::move(ordered);
  return hom;
}

Lens curry(const Lens& f, const Polynomial& r, const Polynomial& q, const Polynomial& p, const InternalHom& hom) {
  const Polynomial& rq = f.dom();
  if (!(rq == tensor(r, q)) || !(f.cod() == p)) {
    throw Error(ErrorKind::InterfaceMismatch, "curry expects a lens r (x) q -> p");
  }
  auto q_shared = share(q);
  auto p_shared = share(p);
  FinMap fwd(r.num_positions());
  std::vector<FinMap> bwd(r.num_positions());
  for (Index k = 0; k < r.num_positions(); ++k) {
    FinMap phi_fwd(q.num_positions());
    std::vector<FinMap> phi_bwd(q.num_positions());
    std::vector<std::vector<Index>> first(q.num_positions());
    for (Index j = 0; j < q.num_positions(); ++j) {
      Index kj = product_index(rq.positions(), r.positions(), q.positions(), k, j);
      phi_fwd[j] = f.fwd(kj);
      auto parts = product_components(rq.fiber(kj), r.fiber(k), q.fiber(j));
      const FinMap& back = f.bwd()[kj];
      phi_bwd[j].resize(back.size());
      first[j].resize(back.size());
      for (Index e = 0; e < back.size(); ++e) {
        phi_bwd[j][e] = parts[back[e]].second;
        first[j][e] = parts[back[e]].first;
      }
    }
    Lens phi(q_shared, p_shared, std::move(phi_fwd), std::move(phi_bwd));
    Index pos = hom.poly->positions().index_of(lens_label(phi));
    fwd[k] = pos;
    const FinSet& hom_fib = hom.poly->fiber(pos);
    bwd[k].resize(hom_fib.size());
    for (Index j = 0; j < q.num_positions(); ++j) {
      const FinSet& pf = p.fiber(phi.fwd(j));
      for (Index e = 0; e < pf.size(); ++e) {
        bwd[k][hom_fib.index_of(encode_pair(q.positions().label(j), pf.label(e)))] = first[j][e];
      }
    }
  }
  return Lens(share(r), hom.poly, std::move(fwd), std::move(bwd));
}

Lens uncurry(const Lens& g, const Polynomial& r, const Polynomial& q, const Polynomial& p, const InternalHom& hom) {
  if (!(g.cod() == *hom.poly) || !(g.dom() == r)) {
    throw Error(ErrorKind::InterfaceMismatch, "uncurry expects a lens r -> [q, p]");
  }
  auto rq = share(tensor(r, q));
  FinMap fwd(rq->num_positions());
  std::vector<FinMap> bwd(rq->num_positions());
  for (Index k = 0; k < r.num_positions(); ++k) {
    Index pos = g.fwd(k);
    const Lens& phi = hom.lenses.at(pos);
    const FinSet& hom_fib = hom.poly->fiber(pos);
    for (Index j = 0; j < q.num_positions(); ++j) {
      Index kj = product_index(rq->positions(), r.positions(), q.positions(), k, j);
      fwd[kj] = phi.fwd(j);
      const FinSet& pf = p.fiber(phi.fwd(j));
      bwd[kj].resize(pf.size());
      for (Index e = 0; e < pf.size(); ++e) {
        Index d = g.bwd(k, hom_fib.index_of(encode_pair(q.positions().label(j), pf.label(e))));
        bwd[kj][e] = product_index(rq->fiber(kj), r.fiber(k), q.fiber(j), d, phi.bwd(j, e));
      }
    }
  }
  return Lens(std::move(rq), share(p), std::move(fwd), std::move(bwd));
}

Section transport_section(const Lens& phi, const Section& tau) {
  Section sigma;
  sigma.choice.resize(phi.fwd().size());
  for (Index i = 0; i < sigma.choice.size(); ++i) sigma.choice[i] = phi.bwd(i, tau.choice.at(phi.fwd(i)));
  return sigma;
}

std::string describe(const Lens& f) { return lens_label(f); }

}  // namespace polydyn
