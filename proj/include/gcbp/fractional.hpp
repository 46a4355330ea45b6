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

#ifndef GCBP_FRACTIONAL_HPP_
#define GCBP_FRACTIONAL_HPP_

#include <span>
#include <vector>

#include "gcbp/core_model.hpp"

namespace gcbp {

// Fractional Next Fit Increasing. Items are taken smallest first and every
// bin is filled to exactly 1 before the next is opened, splitting the
// boundary item. Zero-size items land in the bin that is open when they are
// reached (the first bin). Optimal among fractional packings for every
// concave non-decreasing f, so `f` is accepted only for interface symmetry.
FractionalPacking fnfi(const Instance& instance, const CostFunction& f);

// Same, restricted to a subset of items (processed smallest first).
FractionalPacking fnfi(const Instance& instance, std::span<const ItemIndex> items);

struct SplitRepairResult {
  Packing packing;
  std::vector<ItemIndex> split_items;  // each now alone in a trailing bin
};

// FNFI followed by moving every split item into its own dedicated bin.
// Bins emptied by the repair are dropped.
SplitRepairResult fnfi_split_repair(const Instance& instance, std::span<const ItemIndex> items);

Packing fnfi_with_split_repair(const Instance& instance, const CostFunction& f);

}  // namespace gcbp

#endif  // GCBP_FRACTIONAL_HPP_
