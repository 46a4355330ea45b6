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

#include "gcbp/structures.hpp"

#include <algorithm>
#include <cctype>

#include "gcbp/errors.hpp"

namespace gcbp {

Epsilon::Epsilon(int k) : k_(k) {
  if (k < 3) throw InvalidInput("eps must be 1/k with integer k >= 3, got k = " + std::to_string(k));
}

Epsilon Epsilon::Parse(const std::string& text) {
  if (text.size() < 3 || text.compare(0, 2, "1/") != 0 ||
      !std::all_of(text.begin() + 2, text.end(), [](unsigned char c) { return std::isdigit(c); }) ||
      text.size() > 11) {
    throw InvalidInput("eps must be written as 1/k, got '" + text + "'");
  }
  return Epsilon(std::stoi(text.substr(2)));
}

GroupingResult linear_grouping(const Instance& instance, Epsilon eps) {
  GroupingResult g;
  const std::size_t n = instance.size();
  const Rational e = eps.value();
  g.rounded = instance.sizes();
  g.type_of.assign(n, kNoType);
  for (ItemIndex i = 0; i < n; ++i) {
    (instance.size_of(i) >= e ? g.large : g.small).push_back(i);
  }

  const std::size_t m = static_cast<std::size_t>(eps.k()) * eps.k() * eps.k();
  if (g.large.size() >= m) {
    const std::size_t q = g.large.size() / m;
    const std::size_t r = g.large.size() % m;
    std::size_t next = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t len = q + (j < r ? 1 : 0);
      auto& cls = g.classes.emplace_back(g.large.begin() + static_cast<std::ptrdiff_t>(next),
                                         g.large.begin() + static_cast<std::ptrdiff_t>(next + len));
      next += len;
      if (j == 0) continue;
      // Items are in non-increasing order, so the class maximum comes first.
      for (ItemIndex i : cls) g.rounded[i] = instance.size_of(cls.front());
    }
    g.first_class = g.classes.front();
  } else {
    g.classes.emplace_back();
    for (ItemIndex i : g.large) g.classes.push_back({i});
  }

  for (std::size_t j = 1; j < g.classes.size(); ++j) {
    for (ItemIndex i : g.classes[j]) {
      if (g.type_sizes.empty() || g.type_sizes.back() != g.rounded[i]) {
        g.type_sizes.push_back(g.rounded[i]);
        g.type_counts.push_back(0);
      }
      ++g.type_counts.back();
      g.type_of[i] = g.type_sizes.size() - 1;
    }
  }
  return g;
}

SmallSplit split_small(const Instance& instance, const std::vector<ItemIndex>& small, long h) {
  if (h < 1) throw InvalidInput("split threshold must be positive");
  SmallSplit split;
  split.h = h;
  const Rational bound = Rational(h) + 1;
  Rational total = 0;
  std::size_t first = small.size();
  while (first > 0 && total + instance.size_of(small[first - 1]) <= bound) {
    total += instance.size_of(small[first - 1]);
    --first;
  }
  split.kept.assign(small.begin(), small.begin() + static_cast<std::ptrdiff_t>(first));
  split.suffix.assign(small.begin() + static_cast<std::ptrdiff_t>(first), small.end());
  return split;
}

namespace {

bool within_growth(const CostFunction& f, Epsilon eps, std::size_t t, std::size_t base) {
  const double limit = (1.0 + eps.as_double()) * f(base);
  return f(t) <= limit + kCostTolerance * std::max(1.0, limit);
}

}  // namespace

Staircase build_staircase(const CostFunction& f, Epsilon eps, std::size_t n) {
  Staircase s;
  const std::size_t prefix = std::min<std::size_t>(static_cast<std::size_t>(eps.k()), n);
  for (std::size_t j = 0; j <= prefix; ++j) s.k.push_back(j);
  while (s.k.back() < n) {
    const std::size_t base = s.k.back();
    // f is non-decreasing, so the admissible t form a prefix of (base, n].
    std::size_t lo = base + 1;
    std::size_t hi = n;
    if (!within_growth(f, eps, lo, base)) {
      s.k.push_back(lo);  // cannot happen for concave f; keeps the loop finite
      continue;
    }
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo + 1) / 2;
      if (within_growth(f, eps, mid, base)) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    s.k.push_back(lo);
  }
  return s;
}

bool staircase_is_maximal(const Staircase& stairs, const CostFunction& f, Epsilon eps,
                          std::size_t n) {
  const auto& k = stairs.k;
  if (k.empty() || k.front() != 0 || k.back() != n) return false;
  const std::size_t prefix = std::min<std::size_t>(static_cast<std::size_t>(eps.k()), n);
  if (k.size() < prefix + 1) return false;
  for (std::size_t j = 0; j <= prefix; ++j) {
    if (k[j] != j) return false;
  }
  for (std::size_t j = prefix; j + 1 < k.size(); ++j) {
    if (k[j + 1] <= k[j]) return false;
    if (!within_growth(f, eps, k[j + 1], k[j])) return false;
    if (k[j + 1] < n && within_growth(f, eps, k[j + 1] + 1, k[j])) return false;
  }
  return true;
}

WindowGrid build_windows(Epsilon eps, const Rational& s_min) {
  if (s_min <= 0) throw InvalidInput("window grid needs a positive smallest size");
  WindowGrid grid;
  const Rational ratio(eps.k(), eps.k() + 1);
  grid.sizes.emplace_back(1);
  while (grid.sizes.back() > s_min) {
    Rational next = grid.sizes.back() * ratio;
    next.canonicalize();
    grid.sizes.push_back(next);
  }
  grid.top = static_cast<int>(grid.sizes.size()) - 1;
  Rational last = grid.sizes.back() * ratio;
  last.canonicalize();
  grid.sizes.push_back(last);
  return grid;
}

Lattice::Lattice(Epsilon eps, std::vector<Rational> type_sizes,
                 std::vector<std::size_t> type_counts, Staircase stairs, WindowGrid grid,
                 std::size_t p_limit)
    : eps_(eps),
      type_sizes_(std::move(type_sizes)),
      type_counts_(std::move(type_counts)),
      stairs_(std::move(stairs)),
      grid_(std::move(grid)),
      p_limit_(std::min(p_limit, stairs_.ell())) {}

Rational Lattice::total_size(const Configuration& c) const {
  Rational total = 0;
  for (std::size_t v = 0; v < c.size(); ++v) total += type_sizes_[v] * c[v];
  return total;
}

int Lattice::item_count(const Configuration& c) const {
  int count = 0;
  for (int x : c) count += x;
  return count;
}

bool Lattice::fits(const Configuration& c) const {
  if (c.size() != type_sizes_.size()) return false;
  for (std::size_t v = 0; v < c.size(); ++v) {
    if (c[v] < 0 || static_cast<std::size_t>(c[v]) > type_counts_[v]) return false;
  }
  return total_size(c) <= 1;
}

bool Lattice::feasible(const ExtendedConfiguration& e) const {
  return e.p >= 0 && e.p <= ell() && fits(e.config) &&
         static_cast<std::size_t>(item_count(e.config)) <= kappa(e.p);
}

Window Lattice::main_window(const ExtendedConfiguration& e) const {
  const Rational used = total_size(e.config);
  Window w;
  w.t = 0;
  while (w.t < grid_.degenerate_t() && used + grid_.size(w.t + 1) >= 1) ++w.t;
  const std::size_t left = kappa(e.p) - static_cast<std::size_t>(item_count(e.config));
  w.a = 0;
  while (kappa(w.a) < left) ++w.a;
  return w;
}

bool Lattice::valid(const GeneralizedConfiguration& g) const {
  if (!feasible(g.ext)) return false;
  if (g.window.t < 0 || g.window.t > grid_.degenerate_t() || g.window.a < 0 ||
      g.window.a > ell()) {
    return false;
  }
  const Window m = main_window(g.ext);
  return g.window.t >= m.t && g.window.a <= m.a;
}

bool Lattice::usable(const Window& w) const {
  return w.t <= grid_.top && w.a >= 1 && w.a <= p_limit();
}

std::vector<Configuration> Lattice::enumerate_configurations(std::size_t budget) const {
  std::vector<Configuration> out;
  Configuration current(type_sizes_.size(), 0);
  // Depth-first over types; `room` is the capacity left.
  auto recurse = [&](auto&& self, std::size_t v, const Rational& room) -> void {
    if (v == type_sizes_.size()) {
      if (out.size() >= budget) {
        throw LimitExceeded("configuration enumeration exceeded budget of " +
                            std::to_string(budget));
      }
      out.push_back(current);
      return;
    }
    Rational left = room;
    for (int c = 0;; ++c) {
      current[v] = c;
      self(self, v + 1, left);
      if (static_cast<std::size_t>(c) == type_counts_[v]) break;
      left -= type_sizes_[v];
      if (left < 0) break;
    }
    current[v] = 0;
  };
  recurse(recurse, 0, Rational(1));
  return out;
}

std::set<Window> Lattice::main_windows(const std::vector<Configuration>& configs,
                                       int p_max) const {
  std::set<Window> out;
  for (const auto& c : configs) {
    const auto count = static_cast<std::size_t>(item_count(c));
    for (int p = 0; p <= std::min(p_max, ell()); ++p) {
      if (count <= kappa(p)) out.insert(main_window({c, p}));
    }
  }
  return out;
}

std::size_t breakpoint_at_least(const Staircase& stairs, const Rational& bound) {
  for (std::size_t p = 0; p < stairs.k.size(); ++p) {
    if (Rational(static_cast<unsigned long>(stairs.k[p])) >= bound) return p;
  }
  return stairs.ell();
}

std::string to_string(const Window& w) {
  return "W" + std::to_string(w.t) + "_" + std::to_string(w.a);
}

std::string to_string(const Configuration& c) {
  std::string s;
  for (std::size_t v = 0; v < c.size(); ++v) {
    if (v > 0) s += '.';
    s += std::to_string(c[v]);
  }
  return s.empty() ? "empty" : s;
}

}  // namespace gcbp
