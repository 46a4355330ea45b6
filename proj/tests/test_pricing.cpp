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
#include "gcbp/pricing.hpp"
#include "support.hpp"

using namespace gcbp;
using gcbp::testing::Rng;

namespace {

// Exhaustive KCC optimum over all count vectors.
double brute_kcc(const KccInstance& inst) {
  double best = 0.0;
  std::vector<std::size_t> counts(inst.types.size(), 0);
  std::function<void(std::size_t, Rational, std::size_t, double)> rec =
      [&](std::size_t v, Rational size, std::size_t items, double volume) {
        if (v == inst.types.size()) {
          const bool fits = inst.strict ? size < inst.capacity : size <= inst.capacity;
          if (fits && items <= inst.max_count) best = std::max(best, volume);
          return;
        }
        for (std::size_t c = 0; c <= inst.types[v].multiplicity; ++c) {
          rec(v + 1, size + c * inst.types[v].size, items + c, volume + c * inst.types[v].volume);
        }
      };
  rec(0, 0, 0, 0.0);
  return best;
}

bool feasible(const KccInstance& inst, const KccResult& r, double* volume) {
  Rational size = 0;
  std::size_t items = 0;
  *volume = 0.0;
  for (std::size_t v = 0; v < inst.types.size(); ++v) {
    if (r.counts[v] > inst.types[v].multiplicity) return false;
    size += r.counts[v] * inst.types[v].size;
    items += r.counts[v];
    *volume += static_cast<double>(r.counts[v]) * inst.types[v].volume;
  }
  const bool fits = inst.strict ? size < inst.capacity : size <= inst.capacity;
  return fits && items <= inst.max_count;
}

Lattice make_lattice(std::vector<Rational> sizes, std::vector<std::size_t> counts,
                     const CostFunction& f, std::size_t n) {
  const Epsilon eps(3);
  Staircase st = build_staircase(f, eps, n);
  const std::size_t ell = st.ell();
  return Lattice(eps, std::move(sizes), std::move(counts), std::move(st),
                 build_windows(eps, Rational(1, 10)), ell);
}

}  // namespace

TEST_SUITE("pricing") {

TEST_CASE("kcc examples") {
  KccInstance inst;
  inst.types = {{Rational(3, 5), 5.0, 1}, {Rational(3, 10), 3.0, 2}};
  inst.max_count = 2;
  CHECK(kcc_fptas(inst, 1.0 / 3).volume == doctest::Approx(8.0));
  inst.max_count = 1;
  CHECK(kcc_fptas(inst, 1.0 / 3).volume == doctest::Approx(5.0));
  inst.max_count = 0;
  const KccResult none = kcc_fptas(inst, 1.0 / 3);
  CHECK(none.volume == 0.0);
  CHECK(none.counts == std::vector<std::size_t>{0, 0});
  inst.max_count = 3;
  inst.capacity = Rational(9, 10);
  inst.strict = true;
  CHECK(kcc_fptas(inst, 1.0 / 3).volume == doctest::Approx(6.0));
}

TEST_CASE("property: kcc is feasible and within 1 - eps of brute force") {
  Rng rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    KccInstance inst;
    std::size_t expanded = 0;
    const auto types = rng.uniform(1, 5);
    for (long v = 0; v < types && expanded < 12; ++v) {
      const auto mult = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(std::min<std::size_t>(4, 12 - expanded))));
      expanded += mult;
      inst.types.push_back({make_rational(rng.uniform(1, 60), 60),
                            rng.coin(0.1) ? 0.0 : rng.real() * 10, mult});
    }
    inst.max_count = static_cast<std::size_t>(rng.uniform(0, 6));
    inst.capacity = make_rational(rng.uniform(30, 60), 60);
    inst.strict = rng.coin();
    for (double eps : {1.0 / 3, 1.0 / 5, 1.0 / 20}) {
      const KccResult r = kcc_fptas(inst, eps);
      double volume = 0.0;
      REQUIRE(feasible(inst, r, &volume));
      CHECK(volume == doctest::Approx(r.volume));
      CHECK(r.volume >= (1 - eps) * brute_kcc(inst) - 1e-9);
    }
  }
}

TEST_CASE("price_all with zero duals finds nothing") {
  const CostFunction f = make_fq(2, 8);
  const Lattice lat = make_lattice({Rational(1, 2), Rational(2, 5)}, {4, 4}, f, 8);
  MasterDuals duals;
  duals.alpha = {0.0, 0.0};
  const PricingResult r = price_all(lat, f, duals, 1.0 / 8);
  CHECK(r.violating.empty());
  CHECK(r.max_found_ratio == 0.0);
  CHECK(r.kcc_calls > 0);
}

TEST_CASE("price_all reports an over-priced singleton") {
  const CostFunction f = make_fq(2, 8);
  const Lattice lat = make_lattice({Rational(3, 5)}, {4}, f, 8);
  MasterDuals duals;
  duals.alpha = {f(1) + 1.0};
  const PricingResult r = price_all(lat, f, duals, 1.0 / 8);
  REQUIRE_FALSE(r.violating.empty());
  bool singleton_p1 = false;
  for (const auto& col : r.violating) {
    CHECK(lat.valid(col.column));
    CHECK(col.lhs > col.cost);
    if (col.column.ext.p == 1 && col.column.ext.config == Configuration{1}) singleton_p1 = true;
  }
  CHECK(singleton_p1);
  CHECK(r.max_found_ratio == doctest::Approx(2.0));
  CHECK(r.certified_ratio >= r.max_found_ratio);
}

TEST_CASE("property: priced columns are valid and certified ratio bounds every column") {
  Rng rng(72);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Rational> sizes;
    for (long v = 0; v < rng.uniform(1, 3); ++v) sizes.push_back(make_rational(rng.uniform(20, 60), 60));
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    std::vector<std::size_t> counts(sizes.size(), 3);
    const std::size_t n = 12;
    const CostFunction f = testing::random_concave(rng, n);
    const Lattice lat = make_lattice(sizes, counts, f, n);
    MasterDuals duals;
    for (std::size_t v = 0; v < sizes.size(); ++v) duals.alpha.push_back(rng.real() * 2);
    for (int t = 0; t <= lat.grid().top; ++t) {
      for (int a = 1; a <= lat.ell(); ++a) {
        if (rng.coin(0.3)) duals.window[{t, a}] = {rng.real(), rng.real() * 0.2};
      }
    }
    const double kcc_eps = 1.0 / 8;
    const PricingResult r = price_all(lat, f, duals, kcc_eps);
    for (const auto& col : r.violating) CHECK(lat.valid(col.column));
    // Independent scan over every valid generalized configuration.
    const auto configs = lat.enumerate_configurations(100000);
    double worst = 0.0;
    for (const auto& c : configs) {
      for (int p = 0; p <= lat.p_limit(); ++p) {
        if (!lat.feasible({c, p}) || f(lat.kappa(p)) <= kCostTolerance) continue;
        for (int t = 0; t <= lat.grid().degenerate_t(); ++t) {
          for (int a = 0; a <= lat.ell(); ++a) {
            const GeneralizedConfiguration g{{c, p}, {t, a}};
            if (!lat.valid(g)) continue;
            double lhs = 0.0;
            for (std::size_t v = 0; v < c.size(); ++v) lhs += c[v] * duals.alpha[v];
            const auto [gamma, delta] = duals.of(g.window);
            lhs += lat.grid().size(t).get_d() * gamma + static_cast<double>(lat.kappa(a)) * delta;
            worst = std::max(worst, lhs / f(lat.kappa(p)));
          }
        }
      }
    }
    CHECK(worst <= r.certified_ratio + 1e-9);
    CHECK(r.max_found_ratio <= worst + 1e-9);
  }
}

}  // TEST_SUITE
