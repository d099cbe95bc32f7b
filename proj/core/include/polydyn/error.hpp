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

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace polydyn {

enum class ErrorKind {
  DuplicateLabel,
  UnknownLabel,
  MissingFiber,
  UnknownPosition,
  InterfaceMismatch,
  EnumerationTooLarge,
  SquareDoesNotCommute,
  InvalidDistribution,
  InvalidTable,
  FlowViolation,
  PolicyOutOfFiber,
  NonFiniteState,
  UnsupportedTime,
  MeasureNotPreserved,
  BundleSquareBroken,
  NotAMetricMorphism,
  ChainMismatch,
  NestingConditionFails,
  NotAProductBundle,
  KleisliFlowViolation,
  TimeNotDiscrete,
  SyntaxError,
  UnresolvedReference,
  ValidationError,
  UsageError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. The kind is stable and is what callers
/// (and tests) dispatch on; the message carries the witness in readable form.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Result of a yes/no law check that carries a counterexample on failure.
struct Check {
  bool ok = true;
  std::string witness;

  static Check pass() { return {}; }
  static Check fail(std::string why) { return {false, std::move(why)}; }

  explicit operator bool() const noexcept { return ok; }
};

}  // namespace polydyn
