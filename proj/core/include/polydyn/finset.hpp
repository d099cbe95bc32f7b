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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polydyn {

/// Index of an element inside a FinSet (its position in canonical order).
using Index = std::size_t;

/// A total function between finite sets, stored as the image index of each
/// domain element.
using FinMap = std::vector<Index>;

/// Default bound on the number of candidates any enumerating operation may
/// produce before it refuses with EnumerationTooLarge.
inline constexpr std::size_t kDefaultCap = 1'000'000;

/// Finite set of distinct string labels, kept in lexicographic order. Every
/// map in the library refers to elements by their index in this order.
class FinSet {
 public:
  FinSet() = default;
  /// Sorts the labels; throws DuplicateLabel if any label repeats.
  explicit FinSet(std::vector<std::string> labels);
  FinSet(std::initializer_list<std::string_view> labels);

  /// {"0", "1", ..., "n-1"} (ordered lexicographically, so "10" < "2").
  static FinSet range(std::size_t n);
  static FinSet singleton(std::string label = "*");

  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] bool empty() const noexcept { return labels_.empty(); }
  [[nodiscard]] const std::string& label(Index i) const { return labels_.at(i); }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }

  [[nodiscard]] std::optional<Index> find(std::string_view label) const;
  /// Throws UnknownLabel when absent.
  [[nodiscard]] Index index_of(std::string_view label) const;
  [[nodiscard]] bool contains(std::string_view label) const { return find(label).has_value(); }

  auto begin() const noexcept { return labels_.begin(); }
  auto end() const noexcept { return labels_.end(); }

  friend bool operator==(const FinSet&, const FinSet&) = default;

 private:
  std::vector<std::string> labels_;
};

/// Canonical tuple label "(a,b,...)".
std::string encode_tuple(std::span<const std::string> parts);
std::string encode_pair(std::string_view a, std::string_view b);
/// Canonical list label "[a,b,...]" used for functions listed in domain order.
std::string encode_list(std::span<const std::string> parts);
/// Splits a "(..)" or "[..]" label at top-level commas; nullopt if the label
/// is not a well-bracketed tuple of the requested shape.
std::optional<std::vector<std::string>> decode_tuple(std::string_view label);
std::optional<std::vector<std::string>> decode_list(std::string_view label);

/// Cartesian product with labels "(a,b)".
FinSet product(const FinSet& a, const FinSet& b);
/// Index of (i, j) in product(a, b).
Index product_index(const FinSet& prod, const FinSet& a, const FinSet& b, Index i, Index j);

/// All total functions dom -> cod, each labelled by encode_list of its images.
/// Throws EnumerationTooLarge when |cod|^|dom| exceeds cap.
FinSet function_space(const FinSet& dom, const FinSet& cod, std::size_t cap = kDefaultCap);

/// Saturating integer power / product used for enumeration size estimates.
std::size_t saturating_pow(std::size_t base, std::size_t exp);
std::size_t saturating_mul(std::size_t a, std::size_t b);
std::size_t saturating_add(std::size_t a, std::size_t b);

/// Advances a mixed-radix counter; returns false once it wraps to all zeros.
bool next_odometer(std::vector<Index>& digits, std::span<const std::size_t> radices);

/// Throws EnumerationTooLarge if count > cap.
void require_within_cap(std::size_t count, std::size_t cap, std::string_view what);

FinMap identity_map(std::size_t n);
FinMap compose_maps(const FinMap& g, const FinMap& f);  // g after f

}  // namespace polydyn
