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

// Pricing for the configuration LP: an FPTAS for knapsack with a maximum
// cardinality constraint, and the scan over all (window, breakpoint) pairs
// that turns it into a separation oracle for the dual.

#ifndef GCBP_PRICING_HPP_
#define GCBP_PRICING_HPP_

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "gcbp/core_model.hpp"
#include "gcbp/structures.hpp"

namespace gcbp {

struct KccItemType {
  Rational size;  // > 0
  double volume = 0.0;
  std::size_t multiplicity = 1;
};

struct KccInstance {
  std::vector<KccItemType> types;
  std::size_t max_count = 0;
  Rational capacity = 1;
  bool strict = false;  // total size < capacity instead of <=
};

struct KccResult {
  std::vector<std::size_t> counts;  // per type
  double volume = 0.0;
};

// Volume at least (1 - eps) times the optimum; always feasible.
KccResult kcc_fptas(const KccInstance& instance, double eps);

// Dual values of the restricted master. Windows without rows are absent
// from `window` and price as zero.
struct MasterDuals {
  std::vector<double> alpha;                             // per item type
  std::map<Window, std::pair<double, double>> window;    // (size row, count row)

  std::pair<double, double> of(const Window& w) const;
};

struct PricedColumn {
  GeneralizedConfiguration column;
  double lhs = 0.0;   // alpha . n(C) + w gamma_W + kappa delta_W
  double cost = 0.0;  // f(k_p)
};

struct PricingResult {
  std::vector<PricedColumn> violating;  // ordered by (window, p)
  double max_found_ratio = 0.0;
  // Upper bound on lhs / cost over every valid generalized configuration,
  // given the KCC guarantee.
  double certified_ratio = 0.0;
  std::size_t kcc_calls = 0;
};

// Columns whose ratio lhs / cost exceeds `add_threshold` are reported.
PricingResult price_all(const Lattice& lattice, const CostFunction& f, const MasterDuals& duals,
                        double kcc_eps, double add_threshold = 1.0 + 1e-9);

}  // namespace gcbp

#endif  // GCBP_PRICING_HPP_
