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

#include "gcbp/heuristics.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "gcbp/errors.hpp"

namespace gcbp {

std::vector<std::uint64_t> pi_sequence(std::size_t count) {
  if (count == 0) throw InvalidInput("pi_sequence requires count >= 1");
  std::vector<std::uint64_t> terms{2};
  while (terms.size() < count) {
    const std::uint64_t p = terms.back();
    // p * (p - 1) + 1 must not overflow.
    if (p - 1 > (std::numeric_limits<std::uint64_t>::max() - 1) / p) {
      throw LimitExceeded("pi_sequence term " + std::to_string(terms.size() + 1) +
                          " overflows 64 bits");
    }
    terms.push_back(p * (p - 1) + 1);
  }
  return terms;
}

Rational weight(const Rational& p) {
  if (p < 0 || p > 1) throw InvalidInput("weight is defined on [0,1]");
  if (p == 0) return Rational(0);
  // p in (1/(k+1), 1/k]  <=>  k = floor(1/p).
  const mpz_class k = p.get_den() / p.get_num();
  mpz_class pi = 2;
  while (pi < k + 1) pi = pi * (pi - 1) + 1;
  if (pi == k + 1) return Rational(mpz_class(1), k);
  Rational w = Rational(k + 1, k) * p;
  w.canonicalize();
  return w;
}

std::vector<ItemIndex> item_sequence(const Instance& instance, ItemOrder order) {
  std::vector<ItemIndex> seq(instance.size());
  std::iota(seq.begin(), seq.end(), ItemIndex{0});
  if (order == ItemOrder::kIncreasing) std::reverse(seq.begin(), seq.end());
  return seq;
}

Packing next_fit(const Instance& instance, std::span<const ItemIndex> sequence) {
  Packing packing;
  Rational load = 0;
  for (ItemIndex i : sequence) {
    const Rational& s = instance.size_of(i);
    if (packing.bins.empty() || load + s > 1) {
      packing.bins.emplace_back();
      load = 0;
    }
    packing.bins.back().push_back(i);
    load += s;
  }
  return packing;
}

Packing first_fit(const Instance& instance, std::span<const ItemIndex> sequence) {
  Packing packing;
  std::vector<Rational> loads;
  for (ItemIndex i : sequence) {
    const Rational& s = instance.size_of(i);
    std::size_t b = 0;
    while (b < loads.size() && loads[b] + s > 1) ++b;
    if (b == loads.size()) {
      packing.bins.emplace_back();
      loads.emplace_back(0);
    }
    packing.bins[b].push_back(i);
    loads[b] += s;
  }
  return packing;
}

Packing best_fit(const Instance& instance, std::span<const ItemIndex> sequence) {
  Packing packing;
  std::vector<Rational> loads;
  for (ItemIndex i : sequence) {
    const Rational& s = instance.size_of(i);
    std::size_t best = loads.size();
    for (std::size_t b = 0; b < loads.size(); ++b) {
      if (loads[b] + s <= 1 && (best == loads.size() || loads[b] > loads[best])) best = b;
    }
    if (best == loads.size()) {
      packing.bins.emplace_back();
      loads.emplace_back(0);
    }
    packing.bins[best].push_back(i);
    loads[best] += s;
  }
  return packing;
}

Packing next_fit(const Instance& instance, ItemOrder order) {
  const auto seq = item_sequence(instance, order);
  return next_fit(instance, std::span<const ItemIndex>(seq));
}

Packing first_fit(const Instance& instance, ItemOrder order) {
  const auto seq = item_sequence(instance, order);
  return first_fit(instance, std::span<const ItemIndex>(seq));
}

Packing best_fit(const Instance& instance, ItemOrder order) {
  const auto seq = item_sequence(instance, order);
  return best_fit(instance, std::span<const ItemIndex>(seq));
}

MatchHalfResult match_half_detailed(const Instance& instance) {
  const std::size_t n = instance.size();
  const Rational half(1, 2);
  std::size_t t = 0;
  while (t < n && instance.size_of(t) > half) ++t;

  // 1-based M_0 = {ceil((t+1)/2), ..., t}: the smallest ceil(t/2) large items.
  const std::size_t m0_first = t == 0 ? 0 : (t + 2) / 2 - 1;
  std::deque<ItemIndex> large_queue;  // front: item t (smallest large)
  for (std::size_t i = t; i > m0_first; --i) large_queue.push_back(i - 1);
  std::deque<ItemIndex> small_queue;  // front: item t+1 (largest small)
  for (std::size_t i = t; i < n; ++i) small_queue.push_back(i);

  MatchHalfResult result;
  result.large_count = t;
  std::vector<char> matched(n, 0);
  while (!large_queue.empty() && !small_queue.empty()) {
    const ItemIndex j = small_queue.front();
    const ItemIndex i = large_queue.front();
    small_queue.pop_front();
    if (instance.size_of(i) + instance.size_of(j) <= 1) {
      large_queue.pop_front();
      result.packing.bins.push_back({i, j});
      matched[i] = matched[j] = 1;
      ++result.matched_pairs;
    }
  }

  std::vector<ItemIndex> rest;
  for (std::size_t i = n; i > 0; --i) {
    if (!matched[i - 1]) rest.push_back(i - 1);
  }
  Packing tail = next_fit(instance, std::span<const ItemIndex>(rest));
  for (auto& bin : tail.bins) result.packing.bins.push_back(std::move(bin));
  return result;
}

Packing match_half(const Instance& instance) { return match_half_detailed(instance).packing; }

Packing overflowed_packing(const Instance& instance) {
  Packing packing;
  Rational load = 0;
  bool open = false;
  for (std::size_t i = instance.size(); i > 0; --i) {
    if (!open) {
      packing.bins.emplace_back();
      load = 0;
      open = true;
    }
    packing.bins.back().push_back(i - 1);
    load += instance.size_of(i - 1);
    if (load > 1) open = false;
  }
  return packing;
}

double lower_bound_fk(const Instance& instance, int k) {
  if (k < 1) throw InvalidInput("lower_bound_fk requires k >= 1");
  double total = 0.0;
  for (const auto& bin : overflowed_packing(instance).bins) {
    total += static_cast<double>(std::min<std::size_t>(bin.size(), static_cast<std::size_t>(k)));
  }
  return total;
}

}  // namespace gcbp
