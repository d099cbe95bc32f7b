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

#include "polydyn/random_system.hpp"

namespace polydyn {

struct MarkovChain {
  FinSet states;
  Kernel kernel;
};

/// Reads off kernel(m'|m) = sum of gamma(w) over noise w with w acting m -> m'.
/// The total states must be exactly the pairs "(w,m)" with proj the first
/// component; otherwise NotAProductBundle.
MarkovChain extract_markov(const ClosedRDS& rds);

/// Noise space (M -> M)^H with the product measure, base step the cyclic
/// coordinate shift, total step (w, m) |-> (shift w, w_0(m)).
ClosedRDS kernel_to_rds(const Kernel& k, const FinSet& states, std::size_t horizon, std::size_t cap = kDefaultCap);

}  // namespace polydyn
