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

#include <functional>

#include "doctest.h"
#include "gcbp/errors.hpp"
#include "gcbp/exact.hpp"
#include "gcbp/heuristics.hpp"
#include "support.hpp"

using namespace gcbp;
using gcbp::testing::Rng;

namespace {

Instance repeat(std::initializer_list<std::pair<int, Rational>> groups) {
  std::vector<Rational> v;
  for (const auto& [count, size] : groups) v.insert(v.end(), static_cast<std::size_t>(count), size);
  return Instance::FromUnsorted(std::move(v));
}

std::vector<std::size_t> cardinalities(const Packing& p) {
  std::vector<std::size_t> out;
  for (const auto& b : p.bins) out.push_back(b.size());
  return out;
}

// Maximum total weight of a matching between `large` and `small` where an
// edge needs the two sizes to fit together, by exhaustive search.
Rational brute_matching(const Instance& inst, const std::vector<ItemIndex>& large,
                        const std::vector<ItemIndex>& small) {
  std::vector<char> taken(small.size(), 0);
  std::function<Rational(std::size_t)> rec = [&](std::size_t a) -> Rational {
    if (a == large.size()) return 0;
    Rational best = rec(a + 1);
    for (std::size_t b = 0; b < small.size(); ++b) {
      if (taken[b] || inst.size_of(large[a]) + inst.size_of(small[b]) > 1) continue;
      taken[b] = 1;
      const Rational v = weight(inst.size_of(small[b])) + rec(a + 1);
      if (v > best) best = v;
      taken[b] = 0;
    }
    return best;
  };
  return rec(0);
}

}  // namespace

TEST_SUITE("heuristics") {

TEST_CASE("pi_sequence follows the recurrence") {
  CHECK(pi_sequence(4) == std::vector<std::uint64_t>{2, 3, 7, 43});
  CHECK(pi_sequence(1) == std::vector<std::uint64_t>{2});
  CHECK(pi_sequence(5) == std::vector<std::uint64_t>{2, 3, 7, 43, 1807});
  CHECK_THROWS_AS(pi_sequence(0), InvalidInput);
  CHECK_THROWS_AS(pi_sequence(12), LimitExceeded);
}

TEST_CASE("weight function") {
  CHECK(weight(Rational(3, 5)) == 1);
  CHECK(weight(Rational(2, 5)) == Rational(1, 2));
  CHECK(weight(Rational(3, 10)) == Rational(2, 5));
  CHECK(weight(0) == 0);
  CHECK(weight(1) == 1);
  CHECK(weight(Rational(1, 6)) == Rational(1, 6));   // k = 6 = 7 - 1
  CHECK(weight(Rational(1, 7)) == Rational(8, 49));  // k = 7, otherwise branch
  CHECK_THROWS_AS(weight(Rational(3, 2)), InvalidInput);
}

TEST_CASE("property: weight is non-decreasing") {
  Rational prev = 0;
  for (long num = 0; num <= 840; ++num) {
    const Rational w = weight(make_rational(num, 840));
    CHECK(w >= prev);
    prev = w;
  }
}

TEST_CASE("next fit on the single-large fixture") {
  const Instance inst = repeat({{1, Rational(3, 4)}, {8, Rational(1, 16)}});
  const Packing nfd = next_fit(inst, ItemOrder::kDecreasing);
  CHECK(cardinalities(nfd) == std::vector<std::size_t>{5, 4});
  CHECK(eval_cost(make_fq(4, 9), nfd) == 8.0);
  CHECK(next_fit(inst, ItemOrder::kIncreasing).bin_count() == 2);
  CHECK(next_fit(inst, ItemOrder::kGiven) == nfd);
  CHECK(next_fit(repeat({{1, Rational(1, 3)}}), ItemOrder::kIncreasing).bins.size() == 1);
  CHECK(next_fit(Instance{}, ItemOrder::kIncreasing).bins.empty());
}

TEST_CASE("first fit and best fit differ from next fit") {
  // Decreasing: 0.7, 0.5, 0.3, 0.2. FF puts 0.3 with 0.7 and 0.2 with 0.5.
  const Instance inst = repeat({{1, Rational(7, 10)}, {1, Rational(1, 2)}, {1, Rational(3, 10)},
                                {1, Rational(1, 5)}});
  CHECK(first_fit(inst, ItemOrder::kDecreasing).bins ==
        std::vector<std::vector<ItemIndex>>{{0, 2}, {1, 3}});
  CHECK(next_fit(inst, ItemOrder::kDecreasing).bins ==
        std::vector<std::vector<ItemIndex>>{{0}, {1, 2, 3}});
  // Best fit picks the fullest bin: 0.2 joins 0.7 (load 0.7) over 0.5.
  const Instance bf = repeat({{1, Rational(7, 10)}, {1, Rational(1, 2)}, {1, Rational(1, 5)}});
  CHECK(best_fit(bf, ItemOrder::kDecreasing).bins ==
        std::vector<std::vector<ItemIndex>>{{0, 2}, {1}});
  CHECK(first_fit(bf, ItemOrder::kDecreasing).bins ==
        std::vector<std::vector<ItemIndex>>{{0, 2}, {1}});
}

TEST_CASE("property: fit heuristics produce valid packings") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = testing::random_instance(rng, static_cast<std::size_t>(rng.uniform(0, 40)));
    for (auto order : {ItemOrder::kIncreasing, ItemOrder::kDecreasing}) {
      CHECK(verify_packing(inst, next_fit(inst, order)).ok());
      CHECK(verify_packing(inst, first_fit(inst, order)).ok());
      CHECK(verify_packing(inst, best_fit(inst, order)).ok());
    }
    CHECK(verify_packing(inst, match_half(inst)).ok());
  }
}

TEST_CASE("match_half examples") {
  const Instance inst = repeat({{4, Rational(3, 4)}, {4, Rational(1, 4)}});
  const MatchHalfResult mh = match_half_detailed(inst);
  CHECK(mh.large_count == 4);
  CHECK(mh.matched_pairs == 2);
  CHECK(eval_cost(make_fq(1, 8), mh.packing) == 5.0);
  CHECK(cardinalities(mh.packing) == std::vector<std::size_t>{2, 2, 2, 1, 1});
  CHECK(exact_opt(inst, make_fq(1, 8)).cost == 4.0);

  const Instance no_large = repeat({{3, Rational(1, 2)}, {2, Rational(1, 5)}});
  CHECK(match_half(no_large) == next_fit(no_large, ItemOrder::kIncreasing));

  const Instance blocked = repeat({{1, Rational(3, 4)}, {1, Rational(3, 10)}});
  const MatchHalfResult b = match_half_detailed(blocked);
  CHECK(b.matched_pairs == 0);
  CHECK(b.packing == next_fit(blocked, ItemOrder::kIncreasing));
  CHECK(b.packing.bin_count() == 2);
}

TEST_CASE("property: greedy matching is a maximum-weight matching") {
  Rng rng(22);
  for (int trial = 0; trial < 150; ++trial) {
    const Instance inst = testing::random_instance(rng, static_cast<std::size_t>(rng.uniform(1, 14)),
                                                   static_cast<int>(rng.uniform(2, 3)));
    const MatchHalfResult mh = match_half_detailed(inst);
    const std::size_t t = mh.large_count;
    if (t > 10) continue;
    std::vector<ItemIndex> m0, small;
    for (ItemIndex i = t / 2; i < t; ++i) m0.push_back(i);  // smallest ceil(t/2)
    for (ItemIndex i = t; i < inst.size(); ++i) small.push_back(i);
    CHECK(m0.size() == (t + 1) / 2);
    CHECK(mh.matched_pairs <= m0.size());
    Rational got = 0;
    for (std::size_t b = 0; b < mh.matched_pairs; ++b) {
      const auto& bin = mh.packing.bins[b];
      REQUIRE(bin.size() == 2);
      CHECK(inst.size_of(bin[0]) + inst.size_of(bin[1]) <= 1);
      CHECK(bin[0] >= t / 2);
      got += weight(inst.size_of(bin[1]));
    }
    CHECK(got == brute_matching(inst, m0, small));
  }
}

TEST_CASE("overflowed packing examples") {
  const Instance three = repeat({{3, Rational(3, 5)}});
  CHECK(cardinalities(overflowed_packing(three)) == std::vector<std::size_t>{2, 1});
  CHECK(cardinalities(overflowed_packing(repeat({{1, Rational(1)}}))) ==
        std::vector<std::size_t>{1});
  const Instance sec2 = repeat({{1, Rational(3, 4)}, {8, Rational(1, 16)}});
  CHECK(cardinalities(overflowed_packing(sec2)) == std::vector<std::size_t>{9});
  CHECK(lower_bound_fk(three, 1) == 2.0);
  CHECK(lower_bound_fk(repeat({{4, Rational(3, 4)}, {4, Rational(1, 4)}}), 2) == 5.0);
  CHECK_THROWS_AS(lower_bound_fk(three, 0), InvalidInput);
}

TEST_CASE("property: overflowed bins exceed capacity and bound the optimum") {
  Rng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = testing::random_instance(rng, static_cast<std::size_t>(rng.uniform(1, 9)));
    const Packing over = overflowed_packing(inst);
    for (std::size_t b = 0; b + 1 < over.bins.size(); ++b) {
      Rational load = 0;
      for (ItemIndex i : over.bins[b]) load += inst.size_of(i);
      CHECK(load > 1);
    }
    // A minimal prefix of size > 1 holds at most 2.
    CHECK(2 * lower_bound_fk(inst, 1) >= inst.total_size().get_d() - 1e-9);
    for (int k = 1; k <= 3; ++k) {
      CHECK(lower_bound_fk(inst, k) <=
            testing::brute_force_opt(inst, make_fq(k, inst.size())) + kCostTolerance);
    }
  }
}

TEST_CASE("property: NFI is no worse than any consecutive-bins packing under f_k") {
  Rng rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = testing::random_instance(rng, static_cast<std::size_t>(rng.uniform(1, 25)));
    // Random feasible consecutive partition of the increasing sequence.
    Packing b;
    Rational load = 0;
    for (std::size_t i = inst.size(); i > 0; --i) {
      const ItemIndex item = i - 1;
      if (b.bins.empty() || load + inst.size_of(item) > 1 || rng.coin(0.2)) {
        b.bins.emplace_back();
        load = 0;
      }
      b.bins.back().push_back(item);
      load += inst.size_of(item);
    }
    REQUIRE(verify_packing(inst, b).ok());
    const Packing nfi = next_fit(inst, ItemOrder::kIncreasing);
    for (int k = 1; k <= 4; ++k) {
      const CostFunction fk = make_fq(k, inst.size());
      CHECK(eval_cost(fk, nfi) <= eval_cost(fk, b) + kCostTolerance);
    }
  }
}

TEST_CASE("property: NFI and NFD use the same number of bins") {
  Rng rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = testing::random_instance(rng, static_cast<std::size_t>(rng.uniform(0, 80)));
    CHECK(next_fit(inst, ItemOrder::kIncreasing).bin_count() ==
          next_fit(inst, ItemOrder::kDecreasing).bin_count());
  }
}

}  // TEST_SUITE
