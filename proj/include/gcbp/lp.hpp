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

// The configuration LP over generalized configurations:
//
//   min  sum f(k_p) x_g
//   s.t. sum_g n(v, C_g) x_g           >= n(v)  for each large type v
//        sum_W y_{i,W}                  >= 1     for each kept small item i
//        w  sum_{g in W} x_g - sum s_i y_{i,W} >= 0   for each row window W
//        kappa sum_{g in W} x_g - sum y_{i,W}   >= 0   for each row window W
//
// solved by column generation over a restricted master.

#ifndef GCBP_LP_HPP_
#define GCBP_LP_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gcbp/pricing.hpp"
#include "gcbp/simplex.hpp"
#include "gcbp/structures.hpp"

namespace gcbp {

class LpModel {
 public:
  LpModel(const Lattice& lattice, const CostFunction& f, std::vector<ItemIndex> small_items,
          std::vector<Rational> small_sizes, std::vector<Window> row_windows);

  const Lattice& lattice() const { return *lattice_; }
  const CostFunction& cost_function() const { return *f_; }
  const std::vector<ItemIndex>& small_items() const { return small_items_; }
  const std::vector<Rational>& small_sizes() const { return small_sizes_; }
  const std::vector<Window>& row_windows() const { return row_windows_; }
  const std::vector<GeneralizedConfiguration>& x_columns() const { return x_columns_; }
  const std::vector<std::pair<std::size_t, Window>>& y_columns() const { return y_columns_; }

  std::size_t row_count() const;
  std::vector<double> rhs() const;
  // Row of the size constraint of `w`; the count row follows it.
  std::optional<std::size_t> window_row(const Window& w) const;
  std::size_t type_row(std::size_t v) const { return v; }
  std::size_t small_row(std::size_t pos) const { return lattice_->type_count() + pos; }

  double x_cost(std::size_t j) const;
  SparseColumn x_entries(std::size_t j) const;
  SparseColumn y_entries(std::size_t j) const;

  // Returns the column index and whether it was new.
  std::pair<std::size_t, bool> add_x(const GeneralizedConfiguration& g);
  std::pair<std::size_t, bool> add_y(std::size_t small_pos, const Window& w);
  std::optional<std::size_t> find_x(const GeneralizedConfiguration& g) const;

  std::string row_name(std::size_t r) const;
  std::string x_name(std::size_t j) const;
  std::string y_name(std::size_t j) const;

 private:
  const Lattice* lattice_;
  const CostFunction* f_;
  std::vector<ItemIndex> small_items_;
  std::vector<Rational> small_sizes_;
  std::vector<double> small_sizes_d_;
  std::vector<Window> row_windows_;
  std::map<Window, std::size_t> window_rows_;
  std::vector<GeneralizedConfiguration> x_columns_;
  std::map<GeneralizedConfiguration, std::size_t> x_index_;
  std::vector<std::pair<std::size_t, Window>> y_columns_;
  std::map<std::pair<std::size_t, Window>, std::size_t> y_index_;
};

struct LpSolution {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> duals;  // per row, empty when not produced by a solve
  double objective = 0.0;
  double dual_objective = 0.0;
};

double lp_objective(const LpModel& model, const LpSolution& sol);
// Largest violation over all rows and sign constraints.
double lp_max_violation(const LpModel& model, const LpSolution& sol);
MasterDuals to_master_duals(const LpModel& model, const std::vector<double>& row_duals);

// Solves the model as given (no column generation).
LpSolution solve_master(const LpModel& model);

struct ColumnGenerationOptions {
  double kcc_eps = 0.0;                // 0 selects eps / (2 (1 + eps))
  std::size_t iteration_limit = 0;     // 0 selects 10 (|H| + 2|W| + |S'|)
};

struct ColumnGenerationResult {
  LpModel model;
  LpSolution solution;
  std::size_t iterations = 0;
  std::size_t columns_added = 0;
  double certified_ratio = 0.0;  // bound on the final dual violation ratio
  double found_ratio = 0.0;      // largest ratio seen by the final pricing round
  double max_duality_gap = 0.0;  // worst primal minus dual objective seen
  bool weak_duality_held = true;
};

// Seeds the master with one singleton configuration per large type and one
// empty configuration per row window, then prices until the dual is within
// a factor 1 + eps of feasibility.
ColumnGenerationResult column_generation(const Lattice& lattice, const CostFunction& f,
                                         const std::vector<ItemIndex>& small_items,
                                         const std::vector<Rational>& small_sizes,
                                         const ColumnGenerationOptions& options = {});

struct ProjectionResult {
  LpModel model;  // rows only for windows in `windows`
  LpSolution solution;
  std::set<Window> windows;  // main windows of the configurations in use
};

// Moves every positive x onto windows that are main windows of some
// configuration in the support, transferring small-item assignments in
// proportion (all against one snapshot). Objective is unchanged.
ProjectionResult project_to_main_windows(const LpModel& model, const LpSolution& sol);

// A vertex of the model's feasible region with objective no larger than
// `sol`'s, found by moving along null-space directions of the support.
LpSolution extract_basic(const LpModel& model, const LpSolution& sol);

// Rank of the support columns (with surplus columns of slack rows).
bool is_basic(const LpModel& model, const LpSolution& sol);

// CPLEX LP format.
void write_lp_format(const LpModel& model, std::ostream& out);

}  // namespace gcbp

#endif  // GCBP_LP_HPP_
