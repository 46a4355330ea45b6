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

// Exact optimum by dynamic programming over item subsets. Exponential; meant
// as a ground-truth oracle for small instances.

#ifndef GCBP_EXACT_HPP_
#define GCBP_EXACT_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "gcbp/core_model.hpp"

namespace gcbp {

inline constexpr std::size_t kDefaultExactLimit = 15;

struct ExactResult {
  Packing packing;
  double cost = 0.0;
};

// Throws LimitExceeded when the instance has more than `limit_n` items.
ExactResult exact_opt(const Instance& instance, const CostFunction& f,
                      std::size_t limit_n = kDefaultExactLimit);

// Optimal f_k costs for every k in `ks`, sharing the feasibility table.
std::vector<double> exact_opt_fk_all(const Instance& instance, std::span<const int> ks,
                                     std::size_t limit_n = kDefaultExactLimit);

}  // namespace gcbp

#endif  // GCBP_EXACT_HPP_
