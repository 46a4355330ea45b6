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

// Cost-oblivious packing heuristics: the Next/First/Best Fit families,
// MatchHalf, the bin-packing weight function and the overflowed packing
// lower bound for the capped-linear costs f_k.

#ifndef GCBP_HEURISTICS_HPP_
#define GCBP_HEURISTICS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "gcbp/core_model.hpp"

namespace gcbp {

enum class ItemOrder {
  kIncreasing,  // smallest first (reverse index order)
  kDecreasing,  // largest first (index order)
  kGiven,       // index order of the instance, identical to kDecreasing
};

// The sequence 2, 3, 7, 43, 1807, ... (p_{i+1} = p_i (p_i - 1) + 1).
// Throws LimitExceeded once a term no longer fits in 64 bits.
std::vector<std::uint64_t> pi_sequence(std::size_t count);

// Weight of an item of size p in [0,1]: with k = floor(1/p), 1/k when k + 1
// is a term of the sequence above, otherwise (k+1)/k * p. Exact.
Rational weight(const Rational& p);

std::vector<ItemIndex> item_sequence(const Instance& instance, ItemOrder order);

Packing next_fit(const Instance& instance, ItemOrder order);
Packing first_fit(const Instance& instance, ItemOrder order);
Packing best_fit(const Instance& instance, ItemOrder order);

// Variants over an explicit item sequence (any permutation of a subset).
Packing next_fit(const Instance& instance, std::span<const ItemIndex> sequence);
Packing first_fit(const Instance& instance, std::span<const ItemIndex> sequence);
Packing best_fit(const Instance& instance, std::span<const ItemIndex> sequence);

struct MatchHalfResult {
  Packing packing;
  std::size_t large_count = 0;    // items with size in (1/2, 1]
  std::size_t matched_pairs = 0;  // pair bins come first in `packing`
};

MatchHalfResult match_half_detailed(const Instance& instance);
Packing match_half(const Instance& instance);

// Consecutive partition in non-decreasing size order where each bin is a
// minimal prefix of total size > 1; only the last bin may be <= 1. Not a
// feasible packing by design.
Packing overflowed_packing(const Instance& instance);

// f_k cost of the overflowed packing; a lower bound on the f_k optimum.
double lower_bound_fk(const Instance& instance, int k);

}  // namespace gcbp

#endif  // GCBP_HEURISTICS_HPP_
