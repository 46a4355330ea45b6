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

#include "gcbp/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gcbp/errors.hpp"

namespace gcbp {

Instance::Instance(std::vector<Rational> sizes) : sizes_(std::move(sizes)) {
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    sizes_[i].canonicalize();
    if (sizes_[i] < 0 || sizes_[i] > 1) {
      throw InvalidInput("item " + std::to_string(i) + " has size " + to_string(sizes_[i]) +
                         " outside [0,1]");
    }
    if (i > 0 && sizes_[i] > sizes_[i - 1]) {
      throw InvalidInput("sizes must be sorted non-increasing (item " + std::to_string(i) + ")");
    }
  }
}

Instance Instance::FromUnsorted(std::vector<Rational> sizes) {
  std::stable_sort(sizes.begin(), sizes.end(),
                   [](const Rational& a, const Rational& b) { return a > b; });
  return Instance(std::move(sizes));
}

Rational Instance::total_size() const {
  Rational total = 0;
  for (const auto& s : sizes_) total += s;
  return total;
}

CostFunction CostFunction::Make(std::vector<double> values) {
  if (values.empty()) throw InvalidInput("cost table must contain f(0)");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw InvalidInput("f(" + std::to_string(i) + ") is not finite");
    }
  }
  if (std::abs(values[0]) > kCostTolerance) throw InvalidInput("f(0) must be 0");
  values[0] = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[i - 1] - kCostTolerance) {
      throw InvalidInput("f is decreasing at " + std::to_string(i));
    }
  }
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i + 1] - values[i] > values[i] - values[i - 1] + kCostTolerance) {
      throw InvalidInput("f is not concave at " + std::to_string(i));
    }
  }
  CostFunction f;
  f.values_ = std::move(values);
  if (f.values_.size() > 1) {
    const double f1 = f.values_[1];
    if (f1 <= kCostTolerance) {
      for (double v : f.values_) {
        if (v > kCostTolerance) throw InvalidInput("f(1) = 0 while f is not identically 0");
      }
    } else {
      if (f1 != 1.0) {
        for (double& v : f.values_) v /= f1;
        f.values_[1] = 1.0;
        f.scale_ = f1;
      }
      f.normalized_ = true;
    }
  }
  return f;
}

double CostFunction::Fractional(double q) const {
  if (q <= 0) return 0.0;
  const double top = static_cast<double>(n());
  if (q >= top) return values_.back();
  const auto i = static_cast<std::size_t>(std::floor(q));
  const double t = q - static_cast<double>(i);
  if (t == 0.0) return values_[i];
  return (1.0 - t) * values_[i] + t * values_[i + 1];
}

double CostFunction::Fractional(const Rational& q) const {
  if (q <= 0) return 0.0;
  if (q >= static_cast<unsigned long>(n())) return values_.back();
  mpz_class whole = q.get_num() / q.get_den();  // floor for q > 0
  const auto i = static_cast<std::size_t>(whole.get_ui());
  Rational t = q - Rational(whole);
  if (t == 0) return values_[i];
  const double td = t.get_d();
  return (1.0 - td) * values_[i] + td * values_[i + 1];
}

CostFunction make_cost_function(std::vector<double> values) {
  return CostFunction::Make(std::move(values));
}

CostFunction make_fq(int q, std::size_t n) {
  if (q < 1) throw InvalidInput("f_q requires q >= 1");
  if (n < 1) throw InvalidInput("f_q requires n >= 1");
  std::vector<double> values(n + 1);
  for (std::size_t t = 0; t <= n; ++t) {
    values[t] = static_cast<double>(std::min<std::size_t>(t, static_cast<std::size_t>(q)));
  }
  return CostFunction::Make(std::move(values));
}

std::size_t Packing::bin_count() const {
  return static_cast<std::size_t>(
      std::count_if(bins.begin(), bins.end(), [](const auto& b) { return !b.empty(); }));
}

Rational FractionalPacking::count(std::size_t bin) const {
  Rational total = 0;
  for (const auto& part : bins[bin]) total += part.fraction;
  return total;
}

FractionalPacking to_fractional(const Packing& packing) {
  FractionalPacking out;
  out.bins.reserve(packing.bins.size());
  for (const auto& bin : packing.bins) {
    auto& dst = out.bins.emplace_back();
    for (ItemIndex i : bin) dst.push_back({i, Rational(1)});
  }
  return out;
}

double eval_cost(const CostFunction& f, const Packing& packing) {
  double total = 0.0;
  for (const auto& bin : packing.bins) total += f(bin.size());
  return total;
}

double eval_fractional_f(const CostFunction& f, double q) { return f.Fractional(q); }

double eval_fractional_cost(const CostFunction& f, const FractionalPacking& packing) {
  double total = 0.0;
  for (std::size_t b = 0; b < packing.bins.size(); ++b) total += f.Fractional(packing.count(b));
  return total;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kOverfull: return "overfull";
    case ViolationKind::kDuplicateItem: return "duplicate_item";
    case ViolationKind::kMissingItem: return "missing_item";
    case ViolationKind::kUnknownItem: return "unknown_item";
    case ViolationKind::kBadFraction: return "bad_fraction";
    case ViolationKind::kFractionSum: return "fraction_sum";
    case ViolationKind::kDuplicatePart: return "duplicate_part";
  }
  return "unknown";
}

namespace {

Verdict verify_integral(const Instance& instance, const Packing& packing,
                        const std::vector<char>& designated) {
  Verdict verdict;
  const std::size_t n = instance.size();
  std::vector<int> seen(n, 0);
  for (std::size_t b = 0; b < packing.bins.size(); ++b) {
    Rational load = 0;
    for (ItemIndex i : packing.bins[b]) {
      if (i >= n || !designated[i]) {
        verdict.violations.push_back({ViolationKind::kUnknownItem, b, i, "item not in the designated set"});
        continue;
      }
      if (++seen[i] == 2) {
        verdict.violations.push_back({ViolationKind::kDuplicateItem, b, i, "item packed more than once"});
      }
      load += instance.size_of(i);
    }
    if (load > 1) {
      verdict.violations.push_back(
          {ViolationKind::kOverfull, b, std::nullopt, "bin size " + to_string(load) + " > 1"});
    }
  }
  for (ItemIndex i = 0; i < n; ++i) {
    if (designated[i] && seen[i] == 0) {
      verdict.violations.push_back({ViolationKind::kMissingItem, std::nullopt, i, "item not packed"});
    }
  }
  return verdict;
}

}  // namespace

Verdict verify_packing(const Instance& instance, const Packing& packing) {
  return verify_integral(instance, packing, std::vector<char>(instance.size(), 1));
}

Verdict verify_packing(const Instance& instance, const Packing& packing,
                       std::span<const ItemIndex> items) {
  std::vector<char> designated(instance.size(), 0);
  Verdict bad;
  for (ItemIndex i : items) {
    if (i >= instance.size()) {
      bad.violations.push_back({ViolationKind::kUnknownItem, std::nullopt, i, "designated index out of range"});
    } else {
      designated[i] = 1;
    }
  }
  Verdict verdict = verify_integral(instance, packing, designated);
  verdict.violations.insert(verdict.violations.begin(), bad.violations.begin(), bad.violations.end());
  return verdict;
}

Verdict verify_packing(const Instance& instance, const FractionalPacking& packing) {
  Verdict verdict;
  const std::size_t n = instance.size();
  std::vector<Rational> total(n, Rational(0));
  for (std::size_t b = 0; b < packing.bins.size(); ++b) {
    Rational load = 0;
    std::map<ItemIndex, int> in_bin;
    for (const auto& part : packing.bins[b]) {
      if (part.item >= n) {
        verdict.violations.push_back({ViolationKind::kUnknownItem, b, part.item, "item index out of range"});
        continue;
      }
      if (part.fraction <= 0 || part.fraction > 1) {
        verdict.violations.push_back({ViolationKind::kBadFraction, b, part.item,
                                      "fraction " + to_string(part.fraction) + " outside (0,1]"});
      }
      if (++in_bin[part.item] == 2) {
        verdict.violations.push_back({ViolationKind::kDuplicatePart, b, part.item, "two parts of one item in a bin"});
      }
      total[part.item] += part.fraction;
      load += part.fraction * instance.size_of(part.item);
    }
    if (load > 1) {
      verdict.violations.push_back(
          {ViolationKind::kOverfull, b, std::nullopt, "bin size " + to_string(load) + " > 1"});
    }
  }
  for (ItemIndex i = 0; i < n; ++i) {
    if (total[i] == 0) {
      verdict.violations.push_back({ViolationKind::kMissingItem, std::nullopt, i, "item not packed"});
    } else if (total[i] != 1) {
      verdict.violations.push_back({ViolationKind::kFractionSum, std::nullopt, i,
                                    "fractions sum to " + to_string(total[i])});
    }
  }
  return verdict;
}

}  // namespace gcbp
