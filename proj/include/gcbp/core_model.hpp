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

// Shared vocabulary for bin packing with concave cardinality costs: a bin
// holding q items costs f(q), f concave and non-decreasing with f(0) = 0.
//
// Item indices always refer to positions in the sorted instance: item 0 is
// the largest, and among equal sizes the lower index is treated as larger.

#ifndef GCBP_CORE_MODEL_HPP_
#define GCBP_CORE_MODEL_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcbp/rational.hpp"

namespace gcbp {

using ItemIndex = std::size_t;

// Cost values are doubles; comparisons between costs use this tolerance.
inline constexpr double kCostTolerance = 1e-9;

class Instance {
 public:
  Instance() = default;

  // `sizes` must lie in [0,1] and be sorted non-increasing.
  explicit Instance(std::vector<Rational> sizes);

  // Sorts (stably) before validating.
  static Instance FromUnsorted(std::vector<Rational> sizes);

  std::size_t size() const { return sizes_.size(); }
  bool empty() const { return sizes_.empty(); }
  const Rational& size_of(ItemIndex i) const { return sizes_[i]; }
  const std::vector<Rational>& sizes() const { return sizes_; }
  Rational total_size() const;

  bool operator==(const Instance& other) const { return sizes_ == other.sizes_; }

 private:
  std::vector<Rational> sizes_;
};

// Tabulated f on {0..n}. Immutable after construction.
class CostFunction {
 public:
  CostFunction() : values_{0.0} {}

  // Validates f(0) = 0, monotonicity and concavity. When f(1) > 0 and
  // f(1) != 1 all values are divided by f(1); `scale()` reports the divisor.
  static CostFunction Make(std::vector<double> values);

  std::size_t n() const { return values_.size() - 1; }
  const std::vector<double>& values() const { return values_; }
  bool normalized() const { return normalized_; }
  double scale() const { return scale_; }

  // f(q) for an integer count; counts beyond n cost f(n).
  double operator()(std::size_t q) const {
    return q < values_.size() ? values_[q] : values_.back();
  }

  // Piecewise-linear extension to real q >= 0, constant beyond n.
  double Fractional(double q) const;
  double Fractional(const Rational& q) const;

 private:
  std::vector<double> values_;
  bool normalized_ = false;
  double scale_ = 1.0;
};

CostFunction make_cost_function(std::vector<double> values);

// f_q(t) = min(t, q) tabulated on {0..n}.
CostFunction make_fq(int q, std::size_t n);

struct Packing {
  std::vector<std::vector<ItemIndex>> bins;

  std::size_t bin_count() const;  // non-empty bins only
  bool operator==(const Packing&) const = default;
};

struct FractionalPart {
  ItemIndex item;
  Rational fraction;  // in (0,1]

  bool operator==(const FractionalPart&) const = default;
};

struct FractionalPacking {
  std::vector<std::vector<FractionalPart>> bins;

  // Sum of fractions in a bin: the bin's (fractional) item count.
  Rational count(std::size_t bin) const;
  bool operator==(const FractionalPacking&) const = default;
};

FractionalPacking to_fractional(const Packing& packing);

double eval_cost(const CostFunction& f, const Packing& packing);
double eval_fractional_f(const CostFunction& f, double q);
double eval_fractional_cost(const CostFunction& f, const FractionalPacking& packing);

enum class ViolationKind {
  kOverfull,       // bin size > 1
  kDuplicateItem,  // integral item placed twice
  kMissingItem,    // designated item not covered
  kUnknownItem,    // index out of range or outside the designated set
  kBadFraction,    // fraction outside (0,1]
  kFractionSum,    // fractions of an item do not sum to exactly 1
  kDuplicatePart,  // two parts of one item in a single bin
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::optional<std::size_t> bin;
  std::optional<ItemIndex> item;
  std::string detail;
};

struct Verdict {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

// Exact-rational verification; every violated bin and item is listed.
Verdict verify_packing(const Instance& instance, const Packing& packing);

// As above, but only `items` must be covered (and only they may appear).
Verdict verify_packing(const Instance& instance, const Packing& packing,
                       std::span<const ItemIndex> items);

Verdict verify_packing(const Instance& instance, const FractionalPacking& packing);

}  // namespace gcbp

#endif  // GCBP_CORE_MODEL_HPP_
