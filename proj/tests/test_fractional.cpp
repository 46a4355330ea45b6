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

#include <set>

#include "doctest.h"
#include "gcbp/exact.hpp"
#include "gcbp/fractional.hpp"
#include "support.hpp"

using namespace gcbp;
using gcbp::testing::Rng;

namespace {

Instance repeat(int count, const Rational& size) {
  return Instance(std::vector<Rational>(static_cast<std::size_t>(count), size));
}

Rational bin_size(const Instance& inst, const std::vector<FractionalPart>& bin) {
  Rational s = 0;
  for (const auto& p : bin) s += p.fraction * inst.size_of(p.item);
  return s;
}

}  // namespace

TEST_SUITE("fractional") {

TEST_CASE("fnfi splits the boundary item") {
  const Instance inst = repeat(3, Rational(3, 5));
  const FractionalPacking p = fnfi(inst, make_fq(1, 3));
  REQUIRE(p.bins.size() == 2);
  CHECK(p.bins[0] == std::vector<FractionalPart>{{2, 1}, {1, Rational(2, 3)}});
  CHECK(p.bins[1] == std::vector<FractionalPart>{{1, Rational(1, 3)}, {0, 1}});
  CHECK(p.count(0) == Rational(5, 3));
  CHECK(p.count(1) == Rational(4, 3));
  CHECK(eval_fractional_cost(make_fq(1, 3), p) == doctest::Approx(2.0));
}

TEST_CASE("fnfi trivial shapes") {
  const Instance exact_one = Instance::FromUnsorted({Rational(1, 2), Rational(1, 3), Rational(1, 6)});
  CHECK(fnfi(exact_one, make_fq(1, 3)).bins.size() == 1);
  const FractionalPacking ones = fnfi(repeat(4, Rational(1)), make_fq(1, 4));
  CHECK(ones.bins.size() == 4);
  for (const auto& b : ones.bins) CHECK(b.size() == 1);
  CHECK(fnfi(Instance{}, make_fq(1, 1)).bins.empty());
}

TEST_CASE("zero-size items share the first bin") {
  const Instance inst = Instance::FromUnsorted({Rational(0), Rational(1), Rational(0)});
  const FractionalPacking p = fnfi(inst, make_fq(3, 3));
  REQUIRE(p.bins.size() == 1);
  CHECK(p.count(0) == 3);
  CHECK(verify_packing(inst, p).ok());
}

TEST_CASE("split repair") {
  const Instance inst = repeat(3, Rational(3, 5));
  const SplitRepairResult r = fnfi_split_repair(inst, std::vector<ItemIndex>{0, 1, 2});
  CHECK(r.split_items == std::vector<ItemIndex>{1});
  CHECK(r.packing.bins == std::vector<std::vector<ItemIndex>>{{2}, {0}, {1}});
  const Instance halves = repeat(2, Rational(1, 2));
  CHECK(fnfi_with_split_repair(halves, make_fq(1, 2)).bins ==
        std::vector<std::vector<ItemIndex>>{{1, 0}});
  const Instance quarters = repeat(4, Rational(1, 4));
  CHECK(to_fractional(fnfi_with_split_repair(quarters, make_fq(1, 4))) ==
        fnfi(quarters, make_fq(1, 4)));
}

TEST_CASE("property: fnfi structure") {
  Rng rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const Instance inst = testing::random_instance(rng, static_cast<std::size_t>(rng.uniform(1, 40)));
    const FractionalPacking p = fnfi(inst, make_fq(1, inst.size()));
    REQUIRE(verify_packing(inst, p).ok());
    std::set<ItemIndex> split;
    for (std::size_t b = 0; b < p.bins.size(); ++b) {
      if (b + 1 < p.bins.size()) CHECK(bin_size(inst, p.bins[b]) == 1);
      int split_here = 0;
      for (const auto& part : p.bins[b]) {
        if (part.fraction != 1) {
          split.insert(part.item);
          ++split_here;
        }
      }
      CHECK(split_here <= 2);
      if (b > 0) CHECK(p.count(b - 1) >= p.count(b));
    }
    CHECK(split.size() + 1 <= std::max<std::size_t>(p.bins.size(), 1));
    const SplitRepairResult r = fnfi_split_repair(inst, [&] {
      std::vector<ItemIndex> all(inst.size());
      std::iota(all.begin(), all.end(), ItemIndex{0});
      return all;
    }());
    CHECK(verify_packing(inst, r.packing).ok());
    CHECK(r.split_items.size() == split.size());
  }
}

TEST_CASE("property: fnfi is no worse than random fractional packings") {
  Rng rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = testing::random_instance(rng, static_cast<std::size_t>(rng.uniform(1, 20)));
    const CostFunction f = testing::random_concave(rng, inst.size());
    const double ours = eval_fractional_cost(f, fnfi(inst, f));
    for (int b = 0; b < 20; ++b) {
      const FractionalPacking other = testing::random_fractional_packing(rng, inst);
      REQUIRE(verify_packing(inst, other).ok());
      CHECK(ours <= eval_fractional_cost(f, other) + 1e-9);
    }
    if (inst.size() <= 8) CHECK(ours <= testing::brute_force_opt(inst, f) + 1e-9);
  }
}

}  // TEST_SUITE
