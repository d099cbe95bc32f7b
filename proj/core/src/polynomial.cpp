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

#include "polydyn/polynomial.hpp"

#include "polydyn/error.hpp"

namespace polydyn {

Polynomial::Polynomial(FinSet positions, std::vector<FinSet> fibers)
    : positions_(std::move(positions)), fibers_(std::move(fibers)) {
  if (fibers_.size() != positions_.size()) {
    throw Error(ErrorKind::MissingFiber, "expected " + std::to_string(positions_.size()) +
                                             " fibers, got " + std::to_string(fibers_.size()));
  }
}

Polynomial Polynomial::make(const FinSet& positions, const std::map<std::string, FinSet>& fibers) {
  for (const auto& [key, _] : fibers) {
    if (!positions.contains(key)) throw Error(ErrorKind::UnknownPosition, "fiber given for unknown position '" + key + "'");
  }
  std::vector<FinSet> ordered;
  ordered.reserve(positions.size());
  for (const auto& pos : positions) {
    auto it = fibers.find(pos);
    if (it == fibers.end()) throw Error(ErrorKind::MissingFiber, "no fiber for position '" + pos + "'");
    ordered.push_back(it->second);
  }
  return Polynomial(positions, std::move(ordered));
}

std::size_t Polynomial::total_directions() const {
  std::size_t n = 0;
  for (const auto& f : fibers_) n += f.size();
  return n;
}

Polynomial identity_polynomial() { return Polynomial(FinSet::singleton(), {FinSet::singleton()}); }

Polynomial constant_polynomial(const FinSet& s) { return Polynomial(s, std::vector<FinSet>(s.size())); }

Polynomial monomial(const FinSet& positions, const FinSet& directions) {
  return Polynomial(positions, std::vector<FinSet>(positions.size(), directions));
}

FinSet total_space(const Polynomial& p) {
  std::vector<std::string> labels;
  for (Index i = 0; i < p.num_positions(); ++i)
    for (const auto& d : p.fiber(i)) labels.push_back(encode_pair(p.positions().label(i), d));
  return FinSet(std::move(labels));
}

FinSet eval_polynomial(const Polynomial& p, const FinSet& x, std::size_t cap) {
  std::size_t count = 0;
  for (const auto& f : p.fibers()) count = saturating_add(count, saturating_pow(x.size(), f.size()));
  require_within_cap(count, cap, "polynomial evaluation");
  std::vector<std::string> labels;
  labels.reserve(count);
  for (Index i = 0; i < p.num_positions(); ++i) {
    for (const auto& g : function_space(p.fiber(i), x, cap)) {
      labels.push_back(encode_pair(p.positions().label(i), g));
    }
  }
  return FinSet(std::move(labels));
}

Polynomial tensor(const Polynomial& p, const Polynomial& q) {
  FinSet positions = product(p.positions(), q.positions());
  std::vector<FinSet> fibers(positions.size());
  for (Index i = 0; i < p.num_positions(); ++i) {
    for (Index j = 0; j < q.num_positions(); ++j) {
      fibers[product_index(positions, p.positions(), q.positions(), i, j)] = product(p.fiber(i), q.fiber(j));
    }
  }
  return Polynomial(std::move(positions), std::move(fibers));
}

Polynomial composite(const Polynomial& p, const Polynomial& q, std::size_t cap) {
  std::vector<std::string> pos_labels;
  std::vector<std::vector<std::string>> fiber_labels;
  std::vector<std::size_t> radices;
  std::size_t count = 0;
  for (const auto& f : p.fibers()) count = saturating_add(count, saturating_pow(q.num_positions(), f.size()));
  require_within_cap(count, cap, "composite polynomial");
  for (Index i = 0; i < p.num_positions(); ++i) {
    const FinSet& dirs = p.fiber(i);
    std::vector<Index> phi(dirs.size(), 0);
    radices.assign(dirs.size(), q.num_positions());
    if (!dirs.empty() && q.num_positions() == 0) continue;
    std::vector<std::string> images(dirs.size());
    do {
      std::vector<std::string> fiber;
      for (Index d = 0; d < dirs.size(); ++d) {
        images[d] = q.positions().label(phi[d]);
        for (const auto& e : q.fiber(phi[d])) fiber.push_back(encode_pair(dirs.label(d), e));
      }
      pos_labels.push_back(encode_pair(p.positions().label(i), encode_list(images)));
      fiber_labels.push_back(std::move(fiber));
    } while (next_odometer(phi, radices));
  }
  FinSet positions(pos_labels);
  std::vector<FinSet> fibers(positions.size());
  for (std::size_t k = 0; k < pos_labels.size(); ++k) {
    fibers[positions.index_of(pos_labels[k])] = FinSet(std::move(fiber_labels[k]));
  }
  return Polynomial(std::move(positions), std::move(fibers));
}

bool is_section(const Polynomial& p, const Section& s) {
  if (s.choice.size() != p.num_positions()) return false;
  for (Index i = 0; i < s.choice.size(); ++i) {
    if (s.choice[i] >= p.fiber(i).size()) return false;
  }
  return true;
}

Section make_section(const Polynomial& p, const std::map<std::string, std::string>& choice) {
  Section s;
  s.choice.resize(p.num_positions());
  for (const auto& [key, _] : choice) {
    if (!p.positions().contains(key)) throw Error(ErrorKind::UnknownPosition, "section chooses at unknown position '" + key + "'");
  }
  for (Index i = 0; i < p.num_positions(); ++i) {
    auto it = choice.find(p.positions().label(i));
    if (it == choice.end()) throw Error(ErrorKind::MissingFiber, "section has no choice at '" + p.positions().label(i) + "'");
    s.choice[i] = p.fiber(i).index_of(it->second);
  }
  return s;
}

std::size_t count_sections(const Polynomial& p) {
  std::size_t n = 1;
  for (const auto& f : p.fibers()) n = saturating_mul(n, f.size());
  return n;
}

std::vector<Section> enumerate_sections(const Polynomial& p, std::size_t cap) {
  std::size_t count = count_sections(p);
  require_within_cap(count, cap, "section enumeration");
  std::vector<Section> out;
  if (count == 0) return out;
  out.reserve(count);
  std::vector<std::size_t> radices;
  for (const auto& f : p.fibers()) radices.push_back(f.size());
  std::vector<Index> digits(p.num_positions(), 0);
  do {
    out.push_back(Section{digits});
  } while (next_odometer(digits, radices));
  return out;
}

std::vector<Index> pull_section(const FinMap& out, const Section& sigma) {
  std::vector<Index> chosen(out.size());
  for (std::size_t s = 0; s < out.size(); ++s) chosen[s] = sigma.choice.at(out[s]);
  return chosen;
}

std::string describe(const Polynomial& p) {
  std::string out = "{";
  for (Index i = 0; i < p.num_positions(); ++i) {
    if (i) out += ", ";
    out += p.positions().label(i) + ": " + encode_list(p.fiber(i).labels());
  }
  return out + "}";
}

std::string describe(const Polynomial& p, const Section& s) {
  std::string out = "{";
  for (Index i = 0; i < s.choice.size(); ++i) {
    if (i) out += ",";
    out += p.positions().label(i) + "->" + p.fiber(i).label(s.choice[i]);
  }
  return out + "}";
}

}  // namespace polydyn
