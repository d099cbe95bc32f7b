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

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace polydyn {

/// Exact rational; always reduced with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;

/// "num/den", or "num" when the value is an integer.
std::string to_string(const Rational& r);
/// Accepts "n", "n/d" and "-n/d"; throws SyntaxError otherwise or on d == 0.
Rational parse_rational(std::string_view text);

}  // namespace polydyn
