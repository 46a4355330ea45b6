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

#include "gcbp/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "gcbp/errors.hpp"

namespace gcbp {
namespace {

struct Copy {
  std::size_t type;
  double volume;
  std::int64_t scaled;
};

template <typename Int>
KccResult run_dp(const KccInstance& inst, const std::vector<Copy>& copies,
                 const std::vector<Int>& sizes, const Int& capacity, std::size_t kmax) {
  std::int64_t top = 0;
  {
    std::vector<std::int64_t> scaled;
    for (const auto& c : copies) scaled.push_back(c.scaled);
    std::sort(scaled.rbegin(), scaled.rend());
    for (std::size_t i = 0; i < std::min(kmax, scaled.size()); ++i) top += scaled[i];
  }
  const std::size_t width = static_cast<std::size_t>(top) + 1;
  const std::size_t cells = (kmax + 1) * width;
  // best[c * width + p]: smallest total size of exactly c copies with scaled
  // volume exactly p; `reach` marks defined cells.
  std::vector<Int> best(cells);
  std::vector<char> reach(cells, 0);
  std::vector<std::vector<char>> take(copies.size(), std::vector<char>(cells, 0));
  reach[0] = 1;
  best[0] = 0;
  for (std::size_t i = 0; i < copies.size(); ++i) {
    const auto dp = static_cast<std::size_t>(copies[i].scaled);
    const Int& s = sizes[copies[i].type];
    for (std::size_t c = kmax; c >= 1; --c) {
      for (std::size_t p = width; p-- > dp;) {
        const std::size_t from = (c - 1) * width + (p - dp);
        if (!reach[from]) continue;
        const Int cand = best[from] + s;
        const bool ok = inst.strict ? cand < capacity : cand <= capacity;
        if (!ok) continue;
        const std::size_t to = c * width + p;
        if (!reach[to] || cand < best[to]) {
          best[to] = cand;
          reach[to] = 1;
          take[i][to] = 1;
        }
      }
    }
  }
  std::size_t best_c = 0;
  std::size_t best_p = 0;
  for (std::size_t c = 0; c <= kmax; ++c) {
    for (std::size_t p = 0; p < width; ++p) {
      if (reach[c * width + p] && p > best_p) {
        best_p = p;
        best_c = c;
      }
    }
  }
  KccResult result;
  result.counts.assign(inst.types.size(), 0);
  std::size_t c = best_c;
  std::size_t p = best_p;
  for (std::size_t i = copies.size(); i-- > 0 && c > 0;) {
    if (take[i][c * width + p]) {
      ++result.counts[copies[i].type];
      result.volume += copies[i].volume;
      p -= static_cast<std::size_t>(copies[i].scaled);
      --c;
    }
  }
  return result;
}

bool fits_alone(const KccInstance& inst, const Rational& total) {
  return inst.strict ? total < inst.capacity : total <= inst.capacity;
}

}  // namespace

KccResult kcc_fptas(const KccInstance& inst, double eps) {
  if (!(eps > 0 && eps < 1)) throw InvalidInput("KCC precision must lie in (0,1)");
  KccResult empty;
  empty.counts.assign(inst.types.size(), 0);
  if (inst.max_count == 0) return empty;

  std::vector<Copy> copies;
  double top_volume = 0.0;
  for (std::size_t v = 0; v < inst.types.size(); ++v) {
    const auto& type = inst.types[v];
    if (type.size <= 0) throw InvalidInput("KCC item sizes must be positive");
    if (!(type.volume > 0)) continue;
    std::size_t n = 0;
    Rational total = 0;
    while (n < std::min(type.multiplicity, inst.max_count) && fits_alone(inst, total + type.size)) {
      total += type.size;
      ++n;
    }
    for (std::size_t i = 0; i < n; ++i) copies.push_back({v, type.volume, 0});
    if (n > 0) top_volume = std::max(top_volume, type.volume);
  }
  if (copies.empty()) return empty;
  const std::size_t kmax = std::min(inst.max_count, copies.size());
  // Rounding each volume down to a multiple of `unit` loses less than
  // kmax * unit = eps * top_volume <= eps * optimum.
  const double unit = eps * top_volume / static_cast<double>(kmax);
  for (auto& c : copies) c.scaled = static_cast<std::int64_t>(std::floor(c.volume / unit));

  // Exact integer sizes over a common denominator.
  mpz_class lcd = inst.capacity.get_den();
  for (const auto& t : inst.types) lcd = lcm(lcd, t.size.get_den());
  std::vector<mpz_class> big(inst.types.size());
  for (std::size_t v = 0; v < inst.types.size(); ++v) {
    big[v] = inst.types[v].size.get_num() * (lcd / inst.types[v].size.get_den());
  }
  const mpz_class cap = inst.capacity.get_num() * (lcd / inst.capacity.get_den());
  const mpz_class limit = mpz_class(std::numeric_limits<std::int64_t>::max() / 4);
  if (cap < limit && cap * static_cast<unsigned long>(kmax + 1) < limit) {
    std::vector<std::int64_t> small(big.size());
    for (std::size_t v = 0; v < big.size(); ++v) {
      small[v] = big[v] < limit ? big[v].get_si() : limit.get_si();
    }
    return run_dp<std::int64_t>(inst, copies, small, cap.get_si(), kmax);
  }
  return run_dp<mpz_class>(inst, copies, big, cap, kmax);
}

std::pair<double, double> MasterDuals::of(const Window& w) const {
  const auto it = window.find(w);
  return it == window.end() ? std::pair<double, double>{0.0, 0.0} : it->second;
}

PricingResult price_all(const Lattice& lattice, const CostFunction& f, const MasterDuals& duals,
                        double kcc_eps, double add_threshold) {
  PricingResult out;
  const auto& grid = lattice.grid();
  const int ell = lattice.ell();

  KccInstance base;
  for (std::size_t v = 0; v < lattice.type_count(); ++v) {
    base.types.push_back({lattice.type_sizes()[v], std::max(0.0, duals.alpha[v]),
                          lattice.type_counts()[v]});
  }
  // KCC answers depend only on the cardinality cap and the window size.
  std::map<std::pair<std::size_t, int>, KccResult> cache;

  for (int t = 0; t <= grid.degenerate_t(); ++t) {
    const double w = grid.size(t).get_d();
    KccInstance inst = base;
    if (t <= grid.top) {
      inst.capacity = 1 - grid.size(t + 1);
      inst.strict = true;
    } else {
      inst.capacity = 1;
      inst.strict = false;
    }
    for (int a = 0; a <= ell; ++a) {
      const Window window{t, a};
      const auto [gamma, delta] = duals.of(window);
      const double extra = w * gamma + static_cast<double>(lattice.kappa(a)) * delta;
      for (int p = a; p <= lattice.p_limit(); ++p) {
        const std::size_t kp = lattice.kappa(p);
        std::size_t cap = kp;
        if (a > 0) {
          const std::size_t below = lattice.kappa(a - 1) + 1;
          if (kp < below) continue;
          cap = kp - below;
        }
        auto it = cache.find({cap, t});
        if (it == cache.end()) {
          inst.max_count = cap;
          it = cache.emplace(std::make_pair(cap, t), kcc_fptas(inst, kcc_eps)).first;
          ++out.kcc_calls;
        }
        const KccResult& found = it->second;
        const double lhs = found.volume + extra;
        const double bound = found.volume / (1.0 - kcc_eps) + extra;
        const double cost = f(kp);
        double ratio = 0.0;
        double certified = 0.0;
        if (cost > kCostTolerance) {
          ratio = lhs / cost;
          certified = bound / cost;
        } else {
          ratio = lhs > kCostTolerance ? std::numeric_limits<double>::infinity() : 0.0;
          certified = bound > kCostTolerance ? std::numeric_limits<double>::infinity() : 0.0;
        }
        out.max_found_ratio = std::max(out.max_found_ratio, ratio);
        out.certified_ratio = std::max(out.certified_ratio, certified);
        if (ratio > add_threshold) {
          GeneralizedConfiguration g;
          g.ext.p = p;
          g.ext.config.assign(found.counts.begin(), found.counts.end());
          g.window = window;
          if (!lattice.valid(g)) {
            throw InternalError("pricing produced an invalid generalized configuration");
          }
          out.violating.push_back({std::move(g), lhs, cost});
        }
      }
    }
  }
  return out;
}

}  // namespace gcbp
