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

// Building blocks of the approximation scheme: accuracy parameter, linear
// grouping of large items, the small-item split, the staircase approximation
// of f, the window grid and the configuration lattice.

#ifndef GCBP_STRUCTURES_HPP_
#define GCBP_STRUCTURES_HPP_

#include <compare>
#include <cstddef>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "gcbp/core_model.hpp"

namespace gcbp {

// eps = 1/k for an integer k >= 3.
class Epsilon {
 public:
  explicit Epsilon(int k);
  // Accepts "1/k" only.
  static Epsilon Parse(const std::string& text);

  int k() const { return k_; }
  Rational value() const { return Rational(1, k_); }
  double as_double() const { return 1.0 / k_; }
  // 1 + eps = (k+1)/k.
  Rational growth() const { return Rational(k_ + 1, k_); }
  std::string to_string() const { return "1/" + std::to_string(k_); }

 private:
  int k_;
};

inline constexpr std::size_t kNoType = std::numeric_limits<std::size_t>::max();

struct GroupingResult {
  std::vector<ItemIndex> large;   // s >= eps, in index order
  std::vector<ItemIndex> small;   // s < eps, in index order
  std::vector<ItemIndex> first_class;  // packed one per bin, never rounded
  std::vector<std::vector<ItemIndex>> classes;  // all classes, first one included
  std::vector<Rational> rounded;  // per item; equals the size outside the rounded classes
  // Distinct rounded sizes of the remaining large items, decreasing, with
  // multiplicities; `type_of[i]` maps an item to its entry or kNoType.
  std::vector<Rational> type_sizes;
  std::vector<std::size_t> type_counts;
  std::vector<std::size_t> type_of;
};

GroupingResult linear_grouping(const Instance& instance, Epsilon eps);

struct SmallSplit {
  std::vector<ItemIndex> kept;      // larger small items, handled by the LP
  std::vector<ItemIndex> suffix;    // smallest items, packed separately
  long h = 0;
};

// `small` must be in index order. The suffix is the longest run of the
// smallest items with total size <= 1 + h.
SmallSplit split_small(const Instance& instance, const std::vector<ItemIndex>& small, long h);

struct Staircase {
  std::vector<std::size_t> k;  // k[0] = 0 < k[1] < ... < k[ell] = n

  std::size_t ell() const { return k.size() - 1; }
};

Staircase build_staircase(const CostFunction& f, Epsilon eps, std::size_t n);

// Checks the construction rule at every breakpoint: prefix 0..1/eps, each
// later breakpoint the largest t with f(t) <= (1+eps) f(previous), end at n.
bool staircase_is_maximal(const Staircase& stairs, const CostFunction& f, Epsilon eps,
                          std::size_t n);

// Window sizes w_t = (1+eps)^-t for t = 0..T+1 where w_T is the largest
// power not above the smallest small size. t = T+1 is the degenerate size.
struct WindowGrid {
  int top = 0;  // T
  std::vector<Rational> sizes;

  int degenerate_t() const { return top + 1; }
  const Rational& size(int t) const { return sizes[static_cast<std::size_t>(t)]; }
};

WindowGrid build_windows(Epsilon eps, const Rational& s_min);

// Window (w_t, k_a), identified by grid indices.
struct Window {
  int t = 0;
  int a = 0;

  auto operator<=>(const Window&) const = default;
};

// n(v, C) per item type.
using Configuration = std::vector<int>;

struct ExtendedConfiguration {
  Configuration config;
  int p = 0;

  auto operator<=>(const ExtendedConfiguration&) const = default;
};

struct GeneralizedConfiguration {
  ExtendedConfiguration ext;
  Window window;

  auto operator<=>(const GeneralizedConfiguration&) const = default;
};

// Everything the LP, the pricing and the rounding agree on.
class Lattice {
 public:
  Lattice(Epsilon eps, std::vector<Rational> type_sizes, std::vector<std::size_t> type_counts,
          Staircase stairs, WindowGrid grid, std::size_t p_limit);

  Epsilon eps() const { return eps_; }
  std::size_t type_count() const { return type_sizes_.size(); }
  const std::vector<Rational>& type_sizes() const { return type_sizes_; }
  const std::vector<std::size_t>& type_counts() const { return type_counts_; }
  const Staircase& stairs() const { return stairs_; }
  const WindowGrid& grid() const { return grid_; }
  int ell() const { return static_cast<int>(stairs_.ell()); }
  // Largest breakpoint index usable by an extended configuration.
  int p_limit() const { return static_cast<int>(p_limit_); }
  std::size_t kappa(int a) const { return stairs_.k[static_cast<std::size_t>(a)]; }

  Rational total_size(const Configuration& c) const;
  int item_count(const Configuration& c) const;
  bool fits(const Configuration& c) const;  // size <= 1 and multiplicities

  bool feasible(const ExtendedConfiguration& e) const;
  Window main_window(const ExtendedConfiguration& e) const;
  bool valid(const GeneralizedConfiguration& g) const;

  bool degenerate(const Window& w) const { return w.t == grid_.degenerate_t(); }
  // Windows that may carry small items: non-degenerate, positive
  // cardinality, reachable by some extended configuration.
  bool usable(const Window& w) const;

  // All configurations (item sets of the large types with size <= 1),
  // including the empty one. Throws LimitExceeded above `budget`.
  std::vector<Configuration> enumerate_configurations(std::size_t budget) const;

  // Main windows of all feasible (C, k_p) with p <= `p_max`.
  std::set<Window> main_windows(const std::vector<Configuration>& configs, int p_max) const;

 private:
  Epsilon eps_;
  std::vector<Rational> type_sizes_;
  std::vector<std::size_t> type_counts_;
  Staircase stairs_;
  WindowGrid grid_;
  std::size_t p_limit_;
};

// Smallest p with k_p >= bound, or ell when none is.
std::size_t breakpoint_at_least(const Staircase& stairs, const Rational& bound);

std::string to_string(const Window& w);
std::string to_string(const Configuration& c);

}  // namespace gcbp

#endif  // GCBP_STRUCTURES_HPP_
