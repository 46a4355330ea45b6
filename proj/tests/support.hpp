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

// Hand-rolled generators and brute-force oracles shared by the tests. The
// oracles deliberately avoid the library's algorithms.

#ifndef GCBP_TESTS_SUPPORT_HPP_
#define GCBP_TESTS_SUPPORT_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "gcbp/core_model.hpp"

namespace gcbp::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    return lo + static_cast<long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool coin(double p = 0.5) { return real() < p; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Sizes with denominator 120 from one of several shapes, so that exact fits
// and ties occur often.
inline Rational random_size(Rng& rng, int shape) {
  constexpr long kDen = 120;
  long num = 0;
  switch (shape) {
    case 0: num = rng.uniform(1, kDen); break;                  // uniform
    case 1: num = rng.uniform(1, kDen / 6); break;              // small
    case 2: num = rng.uniform(kDen / 2 + 1, kDen); break;       // above 1/2
    case 3: num = rng.coin() ? rng.uniform(61, 80) : rng.uniform(5, 40); break;
    case 4: {                                                   // clustered
      static constexpr long kCenters[] = {15, 40, 70, 100};
      num = std::clamp(kCenters[rng.uniform(0, 3)] + rng.uniform(-4, 4), 1L, kDen);
      break;
    }
    default: num = rng.uniform(0, kDen); break;                 // may be 0 or 1
  }
  return make_rational(num, kDen);
}

inline Instance random_instance(Rng& rng, std::size_t n, int shape = -1) {
  const int s = shape >= 0 ? shape : static_cast<int>(rng.uniform(0, 5));
  std::vector<Rational> sizes;
  for (std::size_t i = 0; i < n; ++i) sizes.push_back(random_size(rng, s));
  return Instance::FromUnsorted(std::move(sizes));
}

// Random concave non-decreasing f on {0..n} with f(1) = 1.
inline CostFunction random_concave(Rng& rng, std::size_t n) {
  std::vector<double> v{0.0, 1.0};
  double inc = 1.0;
  const int mode = static_cast<int>(rng.uniform(0, 3));
  const long q = rng.uniform(1, static_cast<long>(std::max<std::size_t>(n, 1)));
  for (std::size_t t = 2; t <= std::max<std::size_t>(n, 1); ++t) {
    switch (mode) {
      case 0: inc = static_cast<long>(t) <= q ? 1.0 : 0.0; break;  // f_q
      case 1: inc *= rng.real(); break;
      case 2: inc = rng.coin(0.3) ? inc * rng.real() : inc; break;
      default: inc = inc / 2; break;
    }
    v.push_back(v.back() + inc);
  }
  return CostFunction::Make(std::move(v));
}

// A random feasible fractional packing: each item is cut into up to three
// parts and parts are placed first-fit into bins of random capacity <= 1.
inline FractionalPacking random_fractional_packing(Rng& rng, const Instance& inst) {
  std::vector<ItemIndex> order(inst.size());
  std::iota(order.begin(), order.end(), ItemIndex{0});
  std::shuffle(order.begin(), order.end(), rng.engine());
  FractionalPacking out;
  std::vector<Rational> load, cap;
  for (ItemIndex i : order) {
    const long parts = rng.uniform(1, 3);
    std::vector<Rational> fractions;
    Rational left = 1;
    for (long p = 0; p + 1 < parts; ++p) {
      const Rational f = left * make_rational(rng.uniform(1, 5), 6);
      fractions.push_back(f);
      left -= f;
    }
    fractions.push_back(left);
    std::vector<char> used(out.bins.size(), 0);
    for (const Rational& f : fractions) {
      const Rational need = f * inst.size_of(i);
      std::size_t b = 0;
      while (b < out.bins.size() && (used[b] || load[b] + need > cap[b])) ++b;
      if (b == out.bins.size()) {
        out.bins.emplace_back();
        load.emplace_back(0);
        cap.push_back(rng.coin(0.7) ? Rational(1) : make_rational(rng.uniform(60, 120), 120));
        if (cap.back() < need) cap.back() = 1;
        used.push_back(0);
      }
      // Merge with an existing part of the same item (possible only when
      // the bin was opened for this item) is avoided by `used`.
      out.bins[b].push_back({i, f});
      load[b] += need;
      used[b] = 1;
    }
  }
  return out;
}

// Minimum cost over all set partitions (restricted growth strings).
inline double brute_force_opt(const Instance& inst, const CostFunction& f) {
  const std::size_t n = inst.size();
  if (n == 0) return 0.0;
  std::vector<std::size_t> label(n, 0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<Rational> load;
  std::vector<std::size_t> count;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      double c = 0.0;
      for (std::size_t q : count) c += f(q);
      best = std::min(best, c);
      return;
    }
    for (std::size_t b = 0; b <= load.size(); ++b) {
      const bool fresh = b == load.size();
      if (fresh) {
        load.emplace_back(0);
        count.push_back(0);
      }
      if (load[b] + inst.size_of(i) <= 1) {
        load[b] += inst.size_of(i);
        ++count[b];
        rec(i + 1);
        load[b] -= inst.size_of(i);
        --count[b];
      }
      if (fresh) {
        load.pop_back();
        count.pop_back();
      }
    }
  };
  rec(0);
  return best;
}

// min c.x s.t. A x >= b, x >= 0 by enumerating bases of [A | -I].
inline std::optional<double> brute_force_lp(const std::vector<std::vector<double>>& A,
                                            const std::vector<double>& b,
                                            const std::vector<double>& c) {
  const std::size_t m = b.size();
  const std::size_t n = c.size();
  const std::size_t total = n + m;
  Eigen::MatrixXd full(m, total);
  full.setZero();
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) full(r, j) = A[r][j];
    full(r, n + r) = -1.0;
  }
  Eigen::VectorXd rhs(m);
  for (std::size_t r = 0; r < m; ++r) rhs(r) = b[r];
  std::optional<double> best;
  std::vector<std::size_t> pick(m);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
    if (depth == m) {
      Eigen::MatrixXd B(m, m);
      for (std::size_t k = 0; k < m; ++k) B.col(k) = full.col(pick[k]);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
      if (lu.rank() < static_cast<long>(m)) return;
      const Eigen::VectorXd x = lu.solve(rhs);
      double obj = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        if (x(k) < -1e-9) return;
        if (pick[k] < n) obj += c[pick[k]] * x(k);
      }
      if (!best || obj < *best) best = obj;
      return;
    }
    for (std::size_t j = from; j < total; ++j) {
      pick[depth] = j;
      rec(depth + 1, j + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace gcbp::testing

#endif  // GCBP_TESTS_SUPPORT_HPP_
