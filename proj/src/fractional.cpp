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

#include "gcbp/fractional.hpp"

#include <algorithm>
#include <numeric>

namespace gcbp {
namespace {

// Smallest first; equal sizes by decreasing index.
std::vector<ItemIndex> increasing_order(std::span<const ItemIndex> items) {
  std::vector<ItemIndex> order(items.begin(), items.end());
  std::sort(order.begin(), order.end(), std::greater<>());
  return order;
}

}  // namespace

FractionalPacking fnfi(const Instance& instance, std::span<const ItemIndex> items) {
  FractionalPacking packing;
  if (items.empty()) return packing;
  packing.bins.emplace_back();
  Rational room = 1;
  for (ItemIndex i : increasing_order(items)) {
    const Rational& size = instance.size_of(i);
    Rational remaining = 1;  // fraction of item i still to place
    while (remaining > 0) {
      if (room == 0) {
        packing.bins.emplace_back();
        room = 1;
      }
      const Rational need = remaining * size;
      if (need <= room) {
        packing.bins.back().push_back({i, remaining});
        room -= need;
        remaining = 0;
      } else {
        Rational part = room / size;
        part.canonicalize();
        packing.bins.back().push_back({i, part});
        remaining -= part;
        room = 0;
      }
    }
  }
  return packing;
}

FractionalPacking fnfi(const Instance& instance, const CostFunction& /*f*/) {
  std::vector<ItemIndex> all(instance.size());
  std::iota(all.begin(), all.end(), ItemIndex{0});
  return fnfi(instance, std::span<const ItemIndex>(all));
}

SplitRepairResult fnfi_split_repair(const Instance& instance, std::span<const ItemIndex> items) {
  const FractionalPacking frac = fnfi(instance, items);
  SplitRepairResult result;
  for (const auto& bin : frac.bins) {
    for (const auto& part : bin) {
      if (part.fraction != 1 &&
          (result.split_items.empty() || result.split_items.back() != part.item)) {
        result.split_items.push_back(part.item);
      }
    }
  }
  auto is_split = [&](ItemIndex i) {
    return std::find(result.split_items.begin(), result.split_items.end(), i) !=
           result.split_items.end();
  };
  for (const auto& bin : frac.bins) {
    std::vector<ItemIndex> whole;
    for (const auto& part : bin) {
      if (!is_split(part.item)) whole.push_back(part.item);
    }
    if (!whole.empty()) result.packing.bins.push_back(std::move(whole));
  }
  for (ItemIndex i : result.split_items) result.packing.bins.push_back({i});
  return result;
}

Packing fnfi_with_split_repair(const Instance& instance, const CostFunction& /*f*/) {
  std::vector<ItemIndex> all(instance.size());
  std::iota(all.begin(), all.end(), ItemIndex{0});
  return fnfi_split_repair(instance, std::span<const ItemIndex>(all)).packing;
}

}  // namespace gcbp
