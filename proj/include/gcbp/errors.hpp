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

#ifndef GCBP_ERRORS_HPP_
#define GCBP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace gcbp {

// Malformed or out-of-contract input (bad sizes, non-concave f, bad eps...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured solver limit was hit: exact oracle size, LP iteration cap,
// configuration enumeration budget.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The LP solver could not make progress (singular basis, lost feasibility).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A packing that must be feasible by construction was not.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gcbp

#endif  // GCBP_ERRORS_HPP_
