// Copyright 2026 The gcbp Authors
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

#ifndef GCBP_RATIONAL_HPP_
#define GCBP_RATIONAL_HPP_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gcbp {

// Item sizes, capacities and window sizes are exact rationals everywhere.
using Rational = mpq_class;

// Accepts "p/q", integers, and finite decimals such as "0.0625" (converted
// exactly). Throws InvalidInput on anything else.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form ("p" when q == 1).
std::string to_string(const Rational& value);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace gcbp

#endif  // GCBP_RATIONAL_HPP_
