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

#include <cstdint>
#include <string>
#include <vector>

#include "polydyn/document.hpp"

namespace polydyn {

inline constexpr int kExitPass = 0;
inline constexpr int kExitLawFailure = 1;
inline constexpr int kExitUsage = 2;

/// Exit code for an error escaping a command: law violations give 1,
/// everything else (parse, reference, usage, enumeration cap) gives 2.
int exit_code_for(const Error& e);

struct CommandResult {
  int exit_code = kExitPass;
  std::string report;    // human- or machine-readable summary
  std::string output;    // document, CSV or JSON payload; empty if none
};

/// Runs the law suites (all, poly, dyn, rand, coalg) over every definition.
/// format is "text" or "json".
CommandResult cmd_check(const Document& doc, const std::string& suite, std::size_t cap = kDefaultCap,
                        const std::string& format = "text");

/// op is tensor, reindex, rebase, compose-lens or hom; the result is added to
/// the document under out_name and the whole document is returned.
CommandResult cmd_transform(const Document& doc, const std::string& op, const std::vector<std::string>& args,
                            const std::string& out_name, std::size_t cap = kDefaultCap);

/// mode is extract (args: rds), pushback (args: kernel) or roundtrip
/// (args: kernel, horizon).
CommandResult cmd_markov(const Document& doc, const std::string& mode, const std::vector<std::string>& args,
                         const std::string& out_name, std::size_t cap = kDefaultCap);

struct SimulateOptions {
  std::string system;
  std::string x0;              // empty: the first state
  std::size_t steps = 10;
  std::uint64_t seed = 0;
  std::string policy = "uniform";  // or "section:<name>"
  std::string format = "csv";      // or "json"
};

CommandResult cmd_simulate(const Document& doc, const SimulateOptions& opts);

}  // namespace polydyn
