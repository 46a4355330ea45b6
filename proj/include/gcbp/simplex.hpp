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

// Dense revised simplex for covering LPs:
//
//   min c^T x  subject to  A x >= b,  x >= 0,  with b >= 0.
//
// Columns can be appended between solves; the previous basis stays primal
// feasible and the next solve starts from it.

#ifndef GCBP_SIMPLEX_HPP_
#define GCBP_SIMPLEX_HPP_

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

namespace gcbp {

using SparseColumn = std::vector<std::pair<std::size_t, double>>;

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  std::size_t refactor_period = 64;
  // Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degenerate_switch = 50;
  std::size_t iteration_limit = 200000;
};

class DenseSimplex {
 public:
  explicit DenseSimplex(std::vector<double> rhs, SimplexOptions options = {});
  ~DenseSimplex();
  DenseSimplex(DenseSimplex&&) noexcept;
  DenseSimplex& operator=(DenseSimplex&&) noexcept;

  std::size_t add_column(double cost, const SparseColumn& entries);

  // Throws NumericalFailure when the problem is infeasible, unbounded or the
  // iteration limit is reached.
  void solve();

  std::size_t rows() const;
  std::size_t columns() const;
  double objective() const;
  // Values of the structural columns.
  std::vector<double> primal() const;
  // Row duals, clipped at zero.
  std::vector<double> duals() const;
  // Structural columns currently in the basis.
  std::vector<std::size_t> basic_columns() const;
  std::size_t iterations() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gcbp

#endif  // GCBP_SIMPLEX_HPP_
