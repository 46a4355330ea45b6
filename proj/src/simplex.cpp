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

#include "gcbp/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gcbp/errors.hpp"

namespace gcbp {

namespace {

enum class Kind { kStructural, kSurplus, kArtificial };

struct Var {
  Kind kind;
  std::size_t index;

  bool operator==(const Var&) const = default;
};

// Total order used by Bland's rule.
std::size_t rank(const Var& v, std::size_t n, std::size_t m) {
  switch (v.kind) {
    case Kind::kStructural: return v.index;
    case Kind::kSurplus: return n + v.index;
    case Kind::kArtificial: return n + m + v.index;
  }
  return 0;
}

}  // namespace

struct DenseSimplex::Impl {
  SimplexOptions options;
  std::size_t m = 0;
  Eigen::VectorXd b;
  std::vector<Eigen::VectorXd> cols;
  std::vector<double> costs;

  std::vector<Var> basis;
  Eigen::MatrixXd binv;
  Eigen::VectorXd xb;
  bool started = false;
  std::size_t iterations = 0;
  std::size_t since_refactor = 0;

  Eigen::VectorXd column(const Var& v) const {
    switch (v.kind) {
      case Kind::kStructural: return cols[v.index];
      case Kind::kSurplus: return -Eigen::VectorXd::Unit(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(v.index));
      case Kind::kArtificial: return Eigen::VectorXd::Unit(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(v.index));
    }
    return {};
  }

  double cost(const Var& v, bool phase_one) const {
    if (phase_one) return v.kind == Kind::kArtificial ? 1.0 : 0.0;
    return v.kind == Kind::kStructural ? costs[v.index] : 0.0;
  }

  void refactor() {
    Eigen::MatrixXd basis_matrix(m, m);
    for (std::size_t r = 0; r < m; ++r) basis_matrix.col(static_cast<Eigen::Index>(r)) = column(basis[r]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
    binv = lu.inverse();
    if (!binv.allFinite()) throw NumericalFailure("simplex basis became singular");
    xb = binv * b;
    for (Eigen::Index r = 0; r < xb.size(); ++r) {
      if (xb[r] < 0 && xb[r] > -1e-7) xb[r] = 0;
    }
    since_refactor = 0;
  }

  void start() {
    basis.clear();
    for (std::size_t i = 0; i < m; ++i) {
      basis.push_back(b[static_cast<Eigen::Index>(i)] > 0 ? Var{Kind::kArtificial, i}
                                                          : Var{Kind::kSurplus, i});
    }
    refactor();
    started = true;
  }

  Eigen::VectorXd row_duals(bool phase_one) const {
    Eigen::VectorXd cb(m);
    for (std::size_t r = 0; r < m; ++r) cb[static_cast<Eigen::Index>(r)] = cost(basis[r], phase_one);
    return binv.transpose() * cb;
  }

  bool is_basic(const Var& v) const {
    return std::find(basis.begin(), basis.end(), v) != basis.end();
  }

  void pivot(std::size_t r, const Var& entering, const Eigen::VectorXd& u) {
    const double theta = xb[static_cast<Eigen::Index>(r)] / u[static_cast<Eigen::Index>(r)];
    xb -= theta * u;
    xb[static_cast<Eigen::Index>(r)] = theta;
    const Eigen::RowVectorXd pivot_row = binv.row(static_cast<Eigen::Index>(r)) / u[static_cast<Eigen::Index>(r)];
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(m); ++i) {
      if (i == static_cast<Eigen::Index>(r)) continue;
      if (u[i] != 0.0) binv.row(i) -= u[i] * pivot_row;
    }
    binv.row(static_cast<Eigen::Index>(r)) = pivot_row;
    basis[r] = entering;
    for (Eigen::Index i = 0; i < xb.size(); ++i) {
      if (xb[i] < 0 && xb[i] > -1e-9) xb[i] = 0;
    }
    if (++since_refactor >= options.refactor_period) refactor();
  }

  // Runs the primal simplex on the current basis until optimal.
  void iterate(bool phase_one) {
    const std::size_t n = cols.size();
    std::size_t degenerate_run = 0;
    while (true) {
      if (++iterations > options.iteration_limit) {
        throw NumericalFailure("simplex iteration limit reached");
      }
      const Eigen::VectorXd y = row_duals(phase_one);
      const bool bland = degenerate_run >= options.degenerate_switch;

      Var entering{Kind::kStructural, 0};
      bool found = false;
      double best = -options.optimality_tolerance;
      auto consider = [&](const Var& v, double reduced) {
        if (reduced >= -options.optimality_tolerance) return;
        if (bland) {
          if (!found) {
            entering = v;
            found = true;
          }
          return;
        }
        if (reduced < best) {
          best = reduced;
          entering = v;
          found = true;
        }
      };
      for (std::size_t j = 0; j < n && !(bland && found); ++j) {
        const Var v{Kind::kStructural, j};
        const double reduced = cost(v, phase_one) - y.dot(cols[j]);
        if (reduced < -options.optimality_tolerance && !is_basic(v)) consider(v, reduced);
      }
      for (std::size_t i = 0; i < m && !(bland && found); ++i) {
        const Var v{Kind::kSurplus, i};
        const double reduced = y[static_cast<Eigen::Index>(i)];
        if (reduced < -options.optimality_tolerance && !is_basic(v)) consider(v, reduced);
      }
      if (!found) return;

      const Eigen::VectorXd u = binv * column(entering);
      std::size_t leave = m;
      double theta = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m; ++r) {
        const double ur = u[static_cast<Eigen::Index>(r)];
        if (ur <= options.pivot_tolerance) continue;
        const double ratio = std::max(0.0, xb[static_cast<Eigen::Index>(r)]) / ur;
        if (leave == m || ratio < theta - 1e-12) {
          theta = ratio;
          leave = r;
        } else if (ratio <= theta + 1e-12) {
          const bool better =
              bland ? rank(basis[r], n, m) < rank(basis[leave], n, m)
                    : ur > u[static_cast<Eigen::Index>(leave)];
          if (better) {
            theta = std::min(theta, ratio);
            leave = r;
          }
        }
      }
      if (leave == m) throw NumericalFailure("simplex found an unbounded direction");
      degenerate_run = theta <= 1e-12 ? degenerate_run + 1 : 0;
      pivot(leave, entering, u);
    }
  }

  // After phase one, pivots zero-valued artificials out where possible.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m; ++r) {
      if (basis[r].kind != Kind::kArtificial) continue;
      const Eigen::RowVectorXd row = binv.row(static_cast<Eigen::Index>(r));
      Var entering{Kind::kStructural, 0};
      bool found = false;
      double best = 1e-7;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        const Var v{Kind::kStructural, j};
        const double a = std::abs(row.dot(cols[j]));
        if (a > best && !is_basic(v)) {
          best = a;
          entering = v;
          found = true;
        }
      }
      for (std::size_t i = 0; i < m; ++i) {
        const Var v{Kind::kSurplus, i};
        const double a = std::abs(row[static_cast<Eigen::Index>(i)]);
        if (a > best && !is_basic(v)) {
          best = a;
          entering = v;
          found = true;
        }
      }
      if (found) {
        const Eigen::VectorXd u = binv * column(entering);
        xb[static_cast<Eigen::Index>(r)] = 0.0;
        pivot(r, entering, u);
      }
    }
  }
};

DenseSimplex::DenseSimplex(std::vector<double> rhs, SimplexOptions options)
    : impl_(std::make_unique<Impl>()) {
  impl_->options = options;
  impl_->m = rhs.size();
  impl_->b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rhs.size()));
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    if (!(rhs[i] >= 0) || !std::isfinite(rhs[i])) {
      throw InvalidInput("simplex right-hand sides must be finite and non-negative");
    }
    impl_->b[static_cast<Eigen::Index>(i)] = rhs[i];
  }
}

DenseSimplex::~DenseSimplex() = default;
DenseSimplex::DenseSimplex(DenseSimplex&&) noexcept = default;
DenseSimplex& DenseSimplex::operator=(DenseSimplex&&) noexcept = default;

std::size_t DenseSimplex::add_column(double cost, const SparseColumn& entries) {
  Eigen::VectorXd col = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(impl_->m));
  for (const auto& [row, value] : entries) {
    if (row >= impl_->m) throw InvalidInput("column entry outside the row range");
    col[static_cast<Eigen::Index>(row)] += value;
  }
  impl_->cols.push_back(std::move(col));
  impl_->costs.push_back(cost);
  return impl_->cols.size() - 1;
}

void DenseSimplex::solve() {
  Impl& s = *impl_;
  if (!s.started) {
    s.start();
    bool any_artificial = false;
    for (const auto& v : s.basis) any_artificial |= v.kind == Kind::kArtificial;
    if (any_artificial) {
      s.iterate(true);
      double infeasibility = 0.0;
      for (std::size_t r = 0; r < s.m; ++r) {
        if (s.basis[r].kind == Kind::kArtificial) infeasibility += s.xb[static_cast<Eigen::Index>(r)];
      }
      if (infeasibility > 1e-7 * std::max(1.0, s.b.lpNorm<Eigen::Infinity>())) {
        throw NumericalFailure("restricted master is infeasible (phase one residual " +
                               std::to_string(infeasibility) + ")");
      }
      s.drive_out_artificials();
    }
  }
  s.iterate(false);
  s.refactor();
}

std::size_t DenseSimplex::rows() const { return impl_->m; }
std::size_t DenseSimplex::columns() const { return impl_->cols.size(); }
std::size_t DenseSimplex::iterations() const { return impl_->iterations; }

std::vector<double> DenseSimplex::primal() const {
  std::vector<double> x(impl_->cols.size(), 0.0);
  for (std::size_t r = 0; r < impl_->m; ++r) {
    if (impl_->basis[r].kind == Kind::kStructural) {
      x[impl_->basis[r].index] = std::max(0.0, impl_->xb[static_cast<Eigen::Index>(r)]);
    }
  }
  return x;
}

double DenseSimplex::objective() const {
  const auto x = primal();
  double total = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) total += impl_->costs[j] * x[j];
  return total;
}

std::vector<double> DenseSimplex::duals() const {
  const Eigen::VectorXd y = impl_->row_duals(false);
  std::vector<double> out(impl_->m);
  for (std::size_t i = 0; i < impl_->m; ++i) out[i] = std::max(0.0, y[static_cast<Eigen::Index>(i)]);
  return out;
}

std::vector<std::size_t> DenseSimplex::basic_columns() const {
  std::vector<std::size_t> out;
  for (const auto& v : impl_->basis) {
    if (v.kind == Kind::kStructural) out.push_back(v.index);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gcbp
