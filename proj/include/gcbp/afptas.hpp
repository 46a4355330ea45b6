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

// Asymptotic approximation scheme for bin packing with concave cardinality
// costs: grouping and splitting of the input, the configuration LP solved by
// column generation, and rounding of a basic LP solution to a packing.

#ifndef GCBP_AFPTAS_HPP_
#define GCBP_AFPTAS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gcbp/core_model.hpp"
#include "gcbp/lp.hpp"
#include "gcbp/structures.hpp"

namespace gcbp {

struct AfptasOptions {
  // Replaces the computed split threshold h (must be >= 1/eps). Lets small
  // instances keep small items in the LP.
  std::optional<long> h_override;
  std::size_t configuration_budget = 2'000'000;
  ColumnGenerationOptions column_generation;
  // When set, the final restricted master is written here in LP format.
  std::optional<std::string> lp_dump_path;
};

struct StageRecord {
  std::string name;
  std::size_t bins = 0;
  double cost = 0.0;
};

// One bin opened for a generalized configuration.
struct ConfigurationBin {
  std::size_t bin = 0;           // index in the final packing
  std::size_t column = 0;        // LP column
  std::size_t k_p = 0;           // cardinality budget of the extended configuration
  std::size_t kappa = 0;         // cardinality of its window
  std::size_t smalls_dealt = 0;  // small items after the round-robin step
  std::size_t excess = 0;        // small items moved out as excess
};

struct AfptasReport {
  std::string eps;
  bool base_case = false;
  std::vector<StageRecord> stages;

  std::size_t large_items = 0;
  std::size_t small_items = 0;
  std::size_t first_class_items = 0;
  std::size_t kept_small_items = 0;
  std::size_t suffix_small_items = 0;
  long h = 0;
  bool h_overridden = false;
  std::size_t main_windows_bound = 0;  // main-window count used to derive h

  std::size_t types = 0;             // |H|
  std::vector<std::size_t> staircase;
  bool staircase_maximal = false;
  std::size_t p_limit = 0;
  std::string delta;                 // 1 / smallest kept small size, or 1/eps
  int window_top = 0;                // T
  std::size_t grid_windows = 0;      // |W|
  std::size_t main_windows = 0;      // |W'|
  std::size_t support_windows = 0;   // main windows of the configurations in use
  std::size_t row_windows = 0;       // windows with rows in the rounded LP
  std::size_t configurations = 0;

  std::size_t lp_iterations = 0;
  std::size_t lp_columns = 0;
  double lp_objective = 0.0;
  double projected_objective = 0.0;
  double basic_objective = 0.0;
  double certified_ratio = 0.0;
  double found_ratio = 0.0;
  bool weak_duality_held = true;
  double max_lp_violation = 0.0;

  std::size_t fractional_x = 0;
  std::size_t fractional_y = 0;
  std::size_t fractional_bound = 0;  // |H| + 2 * row windows

  std::vector<ConfigurationBin> configuration_bins;
  std::size_t fallback_bins = 0;
  double cost = 0.0;
};

struct AfptasResult {
  Packing packing;
  double cost = 0.0;
  AfptasReport report;
  // The items handled by the LP (remaining large items with rounded sizes
  // and kept small items), sorted; empty in the base case.
  Instance reduced_instance;
};

AfptasResult run_afptas(const Instance& instance, const CostFunction& f, Epsilon eps,
                        const AfptasOptions& options = {});

// Inputs of the rounding step besides the basic solution.
struct RoundingContext {
  const Instance* instance = nullptr;
  const GroupingResult* grouping = nullptr;
  const LpModel* model = nullptr;
  Epsilon eps{3};
};

struct RoundingResult {
  // Bins in order: dedicated, configuration, removed, special, excess, fallback.
  Packing packing;
  std::vector<ConfigurationBin> configuration_bins;  // `bin` indexes `packing`
  std::size_t dedicated_bins = 0;
  std::size_t removed_bins = 0;
  std::size_t special_bins = 0;
  std::size_t excess_bins = 0;
  std::size_t fallback_bins = 0;
  std::size_t fractional_x = 0;
  std::size_t fractional_y = 0;
};

RoundingResult round_solution(const LpSolution& basic, const RoundingContext& context);

std::string report_to_json(const AfptasReport& report);

}  // namespace gcbp

#endif  // GCBP_AFPTAS_HPP_
