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


#include <benchmark/benchmark.h>

#include "polydyn/coalgebra.hpp"
#include "polydyn/lens.hpp"
#include "polydyn/markov.hpp"
#include "polydyn/open_system.hpp"

namespace {

using namespace polydyn;

Polynomial square_poly(std::size_t n) { return monomial(FinSet::range(n), FinSet::range(2)); }

void BM_EnumerateLenses(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Polynomial p = square_poly(n);
  Polynomial q = square_poly(2);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_lenses(p, q));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(count_lenses(p, q)));
}
BENCHMARK(BM_EnumerateLenses)->Arg(1)->Arg(2)->Arg(3);

void BM_ComposeLenses(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Polynomial p = square_poly(n);
  Lens id = identity_lens(p);
  for (auto _ : state) benchmark::DoNotOptimize(compose_lenses(id, id));
}
BENCHMARK(BM_ComposeLenses)->Arg(8)->Arg(64)->Arg(512);

void BM_KleisliPower(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Dist> rows;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Rational> w(n);
    w[x] = Rational(1, 2);
    w[(x + 1) % n] += Rational(1, 2);
    rows.emplace_back(std::move(w));
  }
  Kernel k(std::move(rows), n);
  for (auto _ : state) benchmark::DoNotOptimize(kleisli_power(k, 8));
}
BENCHMARK(BM_KleisliPower)->Arg(4)->Arg(16)->Arg(32);

void BM_FlowCheckOpen(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Polynomial p = monomial(FinSet{"a"}, FinSet{"u", "v"});
  FinMap out(n, 0);
  std::vector<FinMap> upd(n);
  for (std::size_t s = 0; s < n; ++s) upd[s] = FinMap{(s + 1) % n, s};
  OpenSystem sys = mk_open_discrete(p, FinSet::range(n), out, upd);
  for (auto _ : state) benchmark::DoNotOptimize(check_flow_open(sys));
}
BENCHMARK(BM_FlowCheckOpen)->Arg(16)->Arg(256);

void BM_KernelRoundTrip(benchmark::State& state) {
  const auto h = static_cast<std::size_t>(state.range(0));
  Kernel coin({uniform(2), uniform(2)}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(extract_markov(kernel_to_rds(coin, FinSet{"H", "T"}, h)));
}
BENCHMARK(BM_KernelRoundTrip)->Arg(1)->Arg(2)->Arg(3);

void BM_SimulateCoalgebra(benchmark::State& state) {
  Kernel coin({uniform(2), uniform(2)}, 2);
  std::vector<std::vector<Dist>> upd{{coin.row(0)}, {coin.row(1)}};
  PTCoalgebra c = mk_pt_coalgebra(distribution_monad(), identity_polynomial(), TimeMonoid::discrete(),
                                  FinSet{"H", "T"}, {FinMap{0, 0}}, {upd});
  Policy pol = uniform_policy(identity_polynomial());
  for (auto _ : state) benchmark::DoNotOptimize(simulate_coalg(c, 0, pol, 1000, 42));
}
BENCHMARK(BM_SimulateCoalgebra);

}  // namespace

BENCHMARK_MAIN();
