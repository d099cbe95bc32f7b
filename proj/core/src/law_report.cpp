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


#include "polydyn/law_report.hpp"

#include <algorithm>

#include "json.hpp"

namespace polydyn {

namespace {

std::string count(std::size_t n, const char* noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

std::string render(const LawFailure& f) {
  std::string out = f.law + ":";
  for (std::size_t k = 0; k < f.witness.size(); ++k) {
    out += (k ? ", " : " ") + f.witness[k].first + "=" + f.witness[k].second;
  }
  return out;
}

}  // namespace

void LawReport::fail(std::string law, Witness witness) {
  failures_.push_back(LawFailure{std::move(law), std::move(witness)});
}

void LawReport::warn(std::string message) {
  if (std::find(warnings_.begin(), warnings_.end(), message) == warnings_.end()) warnings_.push_back(std::move(message));
}

void LawReport::merge(const LawReport& other) {
  cases_ += other.cases_;
  failures_.insert(failures_.end(), other.failures_.begin(), other.failures_.end());
  for (const auto& w : other.warnings_) warn(w);
  approximate_ = approximate_ || other.approximate_;
}

std::string LawReport::first_failure() const { return failures_.empty() ? std::string() : render(failures_.front()); }

std::string LawReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite_;
  j["cases"] = cases_;
  j["passed"] = ok();
  j["approximate"] = approximate_;
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : failures_) {
    nlohmann::ordered_json w = nlohmann::ordered_json::array();
    for (const auto& [k, v] : f.witness) w.push_back({k, v});
    j["failures"].push_back({{"law", f.law}, {"witness", w}});
  }
  j["warnings"] = warnings_;
  return j.dump(2);
}

std::string LawReport::to_text() const {
  std::string out = "suite " + suite_ + ": " + count(cases_, "case") + ", " + count(failures_.size(), "failure") + (approximate_ ? " (approximate)" : "") + "\n";
  for (const auto& f : failures_) out += "  FAIL " + render(f) + "\n";
  for (const auto& w : warnings_) out += "  warning: " + w + "\n";
  return out;
}

}  // namespace polydyn
