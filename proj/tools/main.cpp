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


#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polydyn/commands.hpp"

namespace {

struct Common {
  std::string input;
  std::string output;
  std::string format;
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::size_t cap = 0;
};

void add_common(CLI::App* cmd, Common& c, const std::string& default_format) {
  c.format = default_format;
  cmd->add_option("-i,--input", c.input, "document to read ('-' for stdin)")->required();
  cmd->add_option("-o,--output", c.output, "file to write instead of stdout");
  cmd->add_option("-f,--format", c.format, "output format")->capture_default_str();
  cmd->add_option("--seed", c.seed, "splitmix64 seed")->capture_default_str();
  cmd->add_option("--suite", c.suite, "law suite: all, poly, dyn, rand or coalg")->capture_default_str();
  cmd->add_option("--cap", c.cap, "enumeration cap (default: POLYDYN_CAP or built-in)");
}

std::size_t effective_cap(const Common& c) {
  if (c.cap) return c.cap;
  if (const char* env = std::getenv("POLYDYN_CAP")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw polydyn::Error(polydyn::ErrorKind::UsageError, "POLYDYN_CAP is not a number");
    }
  }
  return polydyn::kDefaultCap;
}

polydyn::Document load(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw polydyn::Error(polydyn::ErrorKind::UsageError, "cannot read '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return polydyn::parse_document(text);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw polydyn::Error(polydyn::ErrorKind::UsageError, "cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite polynomial dynamical systems: law checks, transforms, Markov round-trips, simulation"};
  app.require_subcommand(1);

  Common check_opts;
  auto* check = app.add_subcommand("check", "run law suites over a document");
  add_common(check, check_opts, "text");

  Common transform_opts;
  std::string transform_op;
  std::vector<std::string> transform_args;
  std::string transform_name;
  auto* transform = app.add_subcommand("transform", "append a derived definition");
  add_common(transform, transform_opts, "doc");
  transform->add_option("op", transform_op, "tensor, reindex, rebase, compose-lens or hom")->required();
  transform->add_option("args", transform_args, "names the operation acts on");
  transform->add_option("--name", transform_name, "name of the new definition");

  Common markov_opts;
  std::string markov_mode;
  std::vector<std::string> markov_args;
  std::string markov_name;
  auto* markov = app.add_subcommand("markov", "extract, push back or round-trip Markov kernels");
  add_common(markov, markov_opts, "doc");
  markov->add_option("mode", markov_mode, "extract, pushback or roundtrip")->required();
  markov->add_option("args", markov_args, "rds name, or kernel name [and horizon]");
  markov->add_option("--name", markov_name, "name of the new definition");

  Common sim_opts;
  polydyn::SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "run a system under an input policy");
  add_common(simulate, sim_opts, "csv");
  simulate->add_option("--system", sim.system, "system to run")->required();
  simulate->add_option("--x0", sim.x0, "initial state label");
  simulate->add_option("--steps", sim.steps, "number of updates")->capture_default_str();
  simulate->add_option("--policy", sim.policy, "uniform or section:<name>")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : polydyn::kExitUsage;
  }

  try {
    polydyn::CommandResult result;
    if (*check) {
      polydyn::Document doc = load(check_opts.input);
      result = polydyn::cmd_check(doc, check_opts.suite, effective_cap(check_opts), check_opts.format);
      emit(check_opts.output, result.report);
      return result.exit_code;
    }
    if (*transform) {
      polydyn::Document doc = load(transform_opts.input);
      result = polydyn::cmd_transform(doc, transform_op, transform_args, transform_name, effective_cap(transform_opts));
      std::cerr << result.report;
      emit(transform_opts.output, result.output);
      return result.exit_code;
    }
    if (*markov) {
      polydyn::Document doc = load(markov_opts.input);
      result = polydyn::cmd_markov(doc, markov_mode, markov_args, markov_name, effective_cap(markov_opts));
      std::cerr << result.report;
      emit(markov_opts.output, result.output);
      return result.exit_code;
    }
    polydyn::Document doc = load(sim_opts.input);
    sim.seed = sim_opts.seed;
    sim.format = sim_opts.format;
    result = polydyn::cmd_simulate(doc, sim);
    emit(sim_opts.output, result.output);
    return result.exit_code;
  } catch (const polydyn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return polydyn::exit_code_for(e);
  }
}
