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


#include "polydyn/markov.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace polydyn {

MarkovChain extract_markov(const ClosedRDS& rds) {
  const FinSet& omega = rds.base.space.carrier;
  const FinSet& total = rds.total.states();
  std::vector<std::string> ms;
  std::vector<std::pair<Index, std::string>> parts(total.size());
  for (Index x = 0; x < total.size(); ++x) {
    auto tup = decode_tuple(total.label(x));
    if (!tup || tup->size() != 2) {
      throw Error(ErrorKind::NotAProductBundle, "state '" + total.label(x) + "' is not a pair");
    }
    auto w = omega.find((*tup)[0]);
    if (!w) throw Error(ErrorKind::NotAProductBundle, "state '" + total.label(x) + "' names no noise element");
    if (rds.proj[x] != *w) {
      throw Error(ErrorKind::NotAProductBundle, "projection of '" + total.label(x) + "' is not its first component");
    }
    parts[x] = {*w, (*tup)[1]};
    if (*w == 0) ms.push_back((*tup)[1]);
  }
  FinSet m_set(ms);
  if (omega.empty() || total.size() != omega.size() * m_set.size()) {
    throw Error(ErrorKind::NotAProductBundle, "total states are not the full product of noise and chain states");
  }
  std::vector<std::vector<Index>> at(omega.size(), std::vector<Index>(m_set.size()));
  for (Index x = 0; x < total.size(); ++x) {
    auto m = m_set.find(parts[x].second);
    if (!m) throw Error(ErrorKind::NotAProductBundle, "chain state '" + parts[x].second + "' missing over some noise");
    at[parts[x].first][*m] = x;
  }

  FinMap step = rds.total.action(simulation_step(rds.total.time()));
  const Dist& gamma = rds.base.space.measure;
  std::vector<Dist> rows;
  for (Index m = 0; m < m_set.size(); ++m) {
    std::vector<Rational> w(m_set.size());
    for (Index o = 0; o < omega.size(); ++o) {
      if (gamma[o] == 0) continue;
      w[m_set.index_of(parts[step[at[o][m]]].second)] += gamma[o];
    }
    rows.emplace_back(std::move(w));
  }
  return MarkovChain{std::move(m_set), Kernel(std::move(rows), ms.size())};
}

ClosedRDS kernel_to_rds(const Kernel& k, const FinSet& states, std::size_t horizon, std::size_t cap) {
  if (horizon == 0) throw Error(ErrorKind::UsageError, "horizon must be at least 1");
  if (k.dom_size() != states.size() || k.cod_size() != states.size()) {
    throw Error(ErrorKind::InterfaceMismatch, "kernel does not act on the given states");
  }
  Pushback pb = randomness_pushback(k, states, cap);
  const std::size_t n = pb.omega.carrier.size();
  std::size_t count = saturating_pow(n, horizon);
  require_within_cap(saturating_mul(count, std::max<std::size_t>(states.size(), 1)), cap, "noise sequences");

  std::vector<std::vector<Index>> seqs;
  std::vector<std::string> labels;
  std::vector<Rational> weights;
  std::vector<Index> digits(horizon, 0);
  std::vector<std::size_t> radices(horizon, n);
  std::vector<std::string> coords(horizon);
  if (n > 0) {
    do {
      Rational w = 1;
      for (std::size_t c = 0; c < horizon; ++c) {
        coords[c] = pb.omega.carrier.label(digits[c]);
        w *= pb.omega.measure[digits[c]];
      }
      seqs.push_back(digits);
      labels.push_back(encode_tuple(coords));
      weights.push_back(w);
    } while (next_odometer(digits, radices));
  }
  FinSet omega(labels);
  std::vector<Rational> measure(omega.size());
  std::vector<Index> slot(seqs.size());
  for (Index s = 0; s < seqs.size(); ++s) {
    slot[s] = omega.index_of(labels[s]);
    measure[slot[s]] = weights[s];
  }

  FinMap shift(omega.size());
  for (Index s = 0; s < seqs.size(); ++s) {
    for (std::size_t c = 0; c < horizon; ++c) coords[c] = pb.omega.carrier.label(seqs[s][(c + 1) % horizon]);
    shift[slot[s]] = omega.index_of(encode_tuple(coords));
  }

  FinSet total = product(omega, states);
  FinMap step(total.size());
  FinMap proj(total.size());
  for (Index s = 0; s < seqs.size(); ++s) {
    const FinMap& first = pb.maps[seqs[s][0]];
    for (Index m = 0; m < states.size(); ++m) {
      Index x = product_index(total, omega, states, slot[s], m);
      step[x] = product_index(total, omega, states, shift[slot[s]], first[m]);
      proj[x] = slot[s];
    }
  }

  TimeMonoid time = TimeMonoid::discrete();
  MetricSystem base = mk_metric(ClosedSystem::unchecked(time, omega, {shift}), Dist(std::move(measure)));
  return mk_closed_rds(std::move(base), ClosedSystem::unchecked(time, std::move(total), {std::move(step)}), std::move(proj));
}

}  // namespace polydyn
