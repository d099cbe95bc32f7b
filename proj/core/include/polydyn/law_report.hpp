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

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace polydyn {

using Witness = std::vector<std::pair<std::string, std::string>>;

struct LawFailure {
  std::string law;
  Witness witness;
};

/// Outcome of a batch of law checks. Failures and warnings keep insertion
/// order, so a deterministic checker gives a deterministic report.
class LawReport {
 public:
  LawReport() = default;
  explicit LawReport(std::string suite) : suite_(std::move(suite)) {}

  void add_cases(std::size_t n = 1) { cases_ += n; }
  void fail(std::string law, Witness witness);
  void warn(std::string message);
  /// Marks the report as coming from tolerance-based checks.
  void set_approximate(bool on = true) { approximate_ = on; }
  /// Appends cases, failures and warnings of `other`.
  void merge(const LawReport& other);

  [[nodiscard]] bool ok() const noexcept { return failures_.empty(); }
  [[nodiscard]] bool approximate() const noexcept { return approximate_; }
  [[nodiscard]] const std::string& suite() const noexcept { return suite_; }
  [[nodiscard]] std::size_t cases() const noexcept { return cases_; }
  [[nodiscard]] const std::vector<LawFailure>& failures() const noexcept { return failures_; }
  [[nodiscard]] const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// First failure rendered as "law: k=v, ...", or empty.
  [[nodiscard]] std::string first_failure() const;
  [[nodiscard]] std::string to_json() const;
  [[nodiscard]] std::string to_text() const;

 private:
  std::string suite_;
  std::size_t cases_ = 0;
  std::vector<LawFailure> failures_;
  std::vector<std::string> warnings_;
  bool approximate_ = false;
};

}  // namespace polydyn
