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

#include "gcbp/exact.hpp"

#include <bit>
#include <cstdint>
#include <limits>
#include <string>

#include "gcbp/errors.hpp"

namespace gcbp {
namespace {

using Mask = std::uint32_t;

std::vector<char> feasible_subsets(const Instance& instance) {
  const std::size_t n = instance.size();
  const Mask full = (Mask{1} << n) - 1;
  std::vector<Rational> load(std::size_t{full} + 1);
  std::vector<char> feasible(std::size_t{full} + 1, 0);
  feasible[0] = 1;
  for (Mask s = 1; s <= full && s != 0; ++s) {
    const int low = std::countr_zero(s);
    load[s] = load[s & (s - 1)] + instance.size_of(static_cast<ItemIndex>(low));
    feasible[s] = load[s] <= 1;
  }
  return feasible;
}

void check_limit(const Instance& instance, std::size_t limit_n) {
  if (limit_n > 25) throw InvalidInput("exact limit above 25 items is not supported");
  if (instance.size() > limit_n) {
    throw LimitExceeded("exact solver limited to " + std::to_string(limit_n) + " items, got " +
                        std::to_string(instance.size()));
  }
}

// best[S] = min over feasible B containing the lowest item of S of
// cost(|B|) + best[S \ B]. `choice` records the minimizing B.
template <typename CostOf>
double solve(std::size_t n, const std::vector<char>& feasible, CostOf cost_of,
             std::vector<Mask>* choice) {
  const Mask full = n == 0 ? 0 : (Mask{1} << n) - 1;
  std::vector<double> best(std::size_t{full} + 1, std::numeric_limits<double>::infinity());
  best[0] = 0.0;
  if (choice) choice->assign(std::size_t{full} + 1, 0);
  for (Mask s = 1; s <= full && s != 0; ++s) {
    const Mask low = s & (~s + 1);
    const Mask rest = s ^ low;
    double best_s = std::numeric_limits<double>::infinity();
    Mask best_b = 0;
    // Enumerate submasks of `rest` (including empty) joined with `low`.
    Mask sub = rest;
    while (true) {
      const Mask b = sub | low;
      if (feasible[b]) {
        const double c = cost_of(std::popcount(b)) + best[s ^ b];
        if (c < best_s) {
          best_s = c;
          best_b = b;
        }
      }
      if (sub == 0) break;
      sub = (sub - 1) & rest;
    }
    best[s] = best_s;
    if (choice) (*choice)[s] = best_b;
  }
  return best[full];
}

}  // namespace

ExactResult exact_opt(const Instance& instance, const CostFunction& f, std::size_t limit_n) {
  check_limit(instance, limit_n);
  const std::size_t n = instance.size();
  const auto feasible = feasible_subsets(instance);
  std::vector<Mask> choice;
  ExactResult result;
  result.cost = solve(n, feasible, [&](int q) { return f(static_cast<std::size_t>(q)); }, &choice);
  Mask s = n == 0 ? 0 : (Mask{1} << n) - 1;
  while (s != 0) {
    const Mask b = choice[s];
    auto& bin = result.packing.bins.emplace_back();
    for (Mask m = b; m != 0; m &= m - 1) bin.push_back(static_cast<ItemIndex>(std::countr_zero(m)));
    s ^= b;
  }
  return result;
}

std::vector<double> exact_opt_fk_all(const Instance& instance, std::span<const int> ks,
                                     std::size_t limit_n) {
  check_limit(instance, limit_n);
  for (int k : ks) {
    if (k < 1) throw InvalidInput("f_k requires k >= 1");
  }
  const auto feasible = feasible_subsets(instance);
  std::vector<double> costs;
  costs.reserve(ks.size());
  for (int k : ks) {
    costs.push_back(solve(instance.size(), feasible,
                          [k](int q) { return static_cast<double>(q < k ? q : k); }, nullptr));
  }
  return costs;
}

}  // namespace gcbp
