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

#include "polydyn/finset.hpp"

#include <algorithm>
#include <limits>

#include "polydyn/error.hpp"

namespace polydyn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::MissingFiber: return "MissingFiber";
    case ErrorKind::UnknownPosition: return "UnknownPosition";
    case ErrorKind::InterfaceMismatch: return "InterfaceMismatch";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::SquareDoesNotCommute: return "SquareDoesNotCommute";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::InvalidTable: return "InvalidTable";
    case ErrorKind::FlowViolation: return "FlowViolation";
    case ErrorKind::PolicyOutOfFiber: return "PolicyOutOfFiber";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::UnsupportedTime: return "UnsupportedTime";
    case ErrorKind::MeasureNotPreserved: return "MeasureNotPreserved";
    case ErrorKind::BundleSquareBroken: return "BundleSquareBroken";
    case ErrorKind::NotAMetricMorphism: return "NotAMetricMorphism";
    case ErrorKind::ChainMismatch: return "ChainMismatch";
    case ErrorKind::NestingConditionFails: return "NestingConditionFails";
    case ErrorKind::NotAProductBundle: return "NotAProductBundle";
    case ErrorKind::KleisliFlowViolation: return "KleisliFlowViolation";
    case ErrorKind::TimeNotDiscrete: return "TimeNotDiscrete";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnresolvedReference: return "UnresolvedReference";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

FinSet::FinSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  auto dup = std::adjacent_find(labels_.begin(), labels_.end());
  if (dup != labels_.end()) {
    throw Error(ErrorKind::DuplicateLabel, "label '" + *dup + "' appears more than once");
  }
}

FinSet::FinSet(std::initializer_list<std::string_view> labels)
    : FinSet(std::vector<std::string>(labels.begin(), labels.end())) {}

FinSet FinSet::range(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FinSet(std::move(labels));
}

FinSet FinSet::singleton(std::string label) { return FinSet(std::vector<std::string>{std::move(label)}); }

std::optional<Index> FinSet::find(std::string_view label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<Index>(it - labels_.begin());
}

Index FinSet::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw Error(ErrorKind::UnknownLabel, "no element '" + std::string(label) + "'");
}

namespace {

std::string join_bracketed(std::span<const std::string> parts, char open, char close) {
  std::string out(1, open);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  out += close;
  return out;
}

std::optional<std::vector<std::string>> split_bracketed(std::string_view label, char open, char close) {
  if (label.size() < 2 || label.front() != open || label.back() != close) return std::nullopt;
  std::string_view body = label.substr(1, label.size() - 2);
  std::vector<std::string> parts;
  if (body.empty()) return parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') {
      if (--depth < 0) return std::nullopt;
    }
    if (c == ',' && depth == 0) {
      parts.emplace_back(body.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) return std::nullopt;
  parts.emplace_back(body.substr(start));
  return parts;
}

}  // namespace

std::string encode_tuple(std::span<const std::string> parts) { return join_bracketed(parts, '(', ')'); }

std::string encode_pair(std::string_view a, std::string_view b) {
  std::string out;
  out.reserve(a.size() + b.size() + 3);
  out += '(';
  out += a;
  out += ',';
  out += b;
  out += ')';
  return out;
}

std::string encode_list(std::span<const std::string> parts) { return join_bracketed(parts, '[', ']'); }

std::optional<std::vector<std::string>> decode_tuple(std::string_view label) {
  return split_bracketed(label, '(', ')');
}

std::optional<std::vector<std::string>> decode_list(std::string_view label) {
  return split_bracketed(label, '[', ']');
}

FinSet product(const FinSet& a, const FinSet& b) {
  std::vector<std::string> labels;
  labels.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) labels.push_back(encode_pair(x, y));
  return FinSet(std::move(labels));
}

Index product_index(const FinSet& prod, const FinSet& a, const FinSet& b, Index i, Index j) {
  return prod.index_of(encode_pair(a.label(i), b.label(j)));
}

FinSet function_space(const FinSet& dom, const FinSet& cod, std::size_t cap) {
  std::size_t count = saturating_pow(cod.size(), dom.size());
  require_within_cap(count, cap, "function space");
  std::vector<std::string> labels;
  labels.reserve(count);
  if (count == 0) return FinSet{};
  std::vector<Index> digits(dom.size(), 0);
  std::vector<std::size_t> radices(dom.size(), cod.size());
  std::vector<std::string> images(dom.size());
  do {
    for (std::size_t k = 0; k < digits.size(); ++k) images[k] = cod.label(digits[k]);
    labels.push_back(encode_list(images));
  } while (next_odometer(digits, radices));
  return FinSet(std::move(labels));
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::size_t>::max() / b) return std::numeric_limits<std::size_t>::max();
  return a * b;
}

std::size_t saturating_add(std::size_t a, std::size_t b) {
  if (a > std::numeric_limits<std::size_t>::max() - b) return std::numeric_limits<std::size_t>::max();
  return a + b;
}

std::size_t saturating_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    r = saturating_mul(r, base);
    if (r == 0) break;
  }
  return r;
}

bool next_odometer(std::vector<Index>& digits, std::span<const std::size_t> radices) {
  // Rightmost digit moves fastest so enumeration is lexicographic in index tuples.
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < radices[k]) return true;
    digits[k] = 0;
  }
  return false;
}

void require_within_cap(std::size_t count, std::size_t cap, std::string_view what) {
  if (count > cap) {
    throw Error(ErrorKind::EnumerationTooLarge,
                std::string(what) + " needs " +
                    (count == std::numeric_limits<std::size_t>::max() ? std::string("overflowing")
                                                                      : std::to_string(count)) +
                    " candidates, cap is " + std::to_string(cap));
  }
}

FinMap identity_map(std::size_t n) {
  FinMap m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return m;
}

FinMap compose_maps(const FinMap& g, const FinMap& f) {
  FinMap out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = g.at(f[i]);
  return out;
}

}  // namespace polydyn
