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

#include "gcbp/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "gcbp/errors.hpp"

namespace gcbp {

LpModel::LpModel(const Lattice& lattice, const CostFunction& f, std::vector<ItemIndex> small_items,
                 std::vector<Rational> small_sizes, std::vector<Window> row_windows)
    : lattice_(&lattice),
      f_(&f),
      small_items_(std::move(small_items)),
      small_sizes_(std::move(small_sizes)),
      row_windows_(std::move(row_windows)) {
  if (small_items_.size() != small_sizes_.size()) {
    throw InvalidInput("small item list and size list differ in length");
  }
  for (const auto& s : small_sizes_) small_sizes_d_.push_back(s.get_d());
  for (std::size_t r = 0; r < row_windows_.size(); ++r) {
    if (!window_rows_.emplace(row_windows_[r], r).second) {
      throw InvalidInput("duplicate row window " + to_string(row_windows_[r]));
    }
  }
}

std::size_t LpModel::row_count() const {
  return lattice_->type_count() + small_items_.size() + 2 * row_windows_.size();
}

std::vector<double> LpModel::rhs() const {
  std::vector<double> b(row_count(), 0.0);
  for (std::size_t v = 0; v < lattice_->type_count(); ++v) {
    b[v] = static_cast<double>(lattice_->type_counts()[v]);
  }
  for (std::size_t i = 0; i < small_items_.size(); ++i) b[small_row(i)] = 1.0;
  return b;
}

std::optional<std::size_t> LpModel::window_row(const Window& w) const {
  const auto it = window_rows_.find(w);
  if (it == window_rows_.end()) return std::nullopt;
  return lattice_->type_count() + small_items_.size() + 2 * it->second;
}

double LpModel::x_cost(std::size_t j) const {
  return (*f_)(lattice_->kappa(x_columns_[j].ext.p));
}

SparseColumn LpModel::x_entries(std::size_t j) const {
  const auto& g = x_columns_[j];
  SparseColumn col;
  for (std::size_t v = 0; v < g.ext.config.size(); ++v) {
    if (g.ext.config[v] != 0) col.emplace_back(type_row(v), static_cast<double>(g.ext.config[v]));
  }
  if (const auto r = window_row(g.window)) {
    col.emplace_back(*r, lattice_->grid().size(g.window.t).get_d());
    col.emplace_back(*r + 1, static_cast<double>(lattice_->kappa(g.window.a)));
  }
  return col;
}

SparseColumn LpModel::y_entries(std::size_t j) const {
  const auto& [pos, w] = y_columns_[j];
  const auto r = window_row(w);
  return {{small_row(pos), 1.0}, {*r, -small_sizes_d_[pos]}, {*r + 1, -1.0}};
}

std::pair<std::size_t, bool> LpModel::add_x(const GeneralizedConfiguration& g) {
  const auto [it, inserted] = x_index_.emplace(g, x_columns_.size());
  if (inserted) {
    if (!lattice_->valid(g)) throw InternalError("invalid generalized configuration added");
    x_columns_.push_back(g);
  }
  return {it->second, inserted};
}

std::pair<std::size_t, bool> LpModel::add_y(std::size_t small_pos, const Window& w) {
  if (small_pos >= small_items_.size() || !window_row(w)) {
    throw InternalError("assignment column refers to a missing row");
  }
  const auto [it, inserted] = y_index_.emplace(std::make_pair(small_pos, w), y_columns_.size());
  if (inserted) y_columns_.emplace_back(small_pos, w);
  return {it->second, inserted};
}

std::optional<std::size_t> LpModel::find_x(const GeneralizedConfiguration& g) const {
  const auto it = x_index_.find(g);
  if (it == x_index_.end()) return std::nullopt;
  return it->second;
}

std::string LpModel::row_name(std::size_t r) const {
  const std::size_t h = lattice_->type_count();
  if (r < h) return "gcc1_v" + std::to_string(r);
  if (r < h + small_items_.size()) return "gcc2_i" + std::to_string(small_items_[r - h]);
  const std::size_t k = r - h - small_items_.size();
  const Window& w = row_windows_[k / 2];
  return (k % 2 == 0 ? "gcc3_" : "gcc4_") + to_string(w);
}

std::string LpModel::x_name(std::size_t j) const {
  const auto& g = x_columns_[j];
  return "x_C" + to_string(g.ext.config) + "_p" + std::to_string(g.ext.p) + "_" +
         to_string(g.window);
}

std::string LpModel::y_name(std::size_t j) const {
  const auto& [pos, w] = y_columns_[j];
  return "y_i" + std::to_string(small_items_[pos]) + "_" + to_string(w);
}

double lp_objective(const LpModel& model, const LpSolution& sol) {
  double total = 0.0;
  for (std::size_t j = 0; j < sol.x.size(); ++j) total += model.x_cost(j) * sol.x[j];
  return total;
}

namespace {

std::vector<double> row_activity(const LpModel& model, const LpSolution& sol) {
  std::vector<double> act(model.row_count(), 0.0);
  for (std::size_t j = 0; j < sol.x.size(); ++j) {
    if (sol.x[j] == 0.0) continue;
    for (const auto& [r, a] : model.x_entries(j)) act[r] += a * sol.x[j];
  }
  for (std::size_t j = 0; j < sol.y.size(); ++j) {
    if (sol.y[j] == 0.0) continue;
    for (const auto& [r, a] : model.y_entries(j)) act[r] += a * sol.y[j];
  }
  return act;
}

}  // namespace

double lp_max_violation(const LpModel& model, const LpSolution& sol) {
  double worst = 0.0;
  const auto b = model.rhs();
  const auto act = row_activity(model, sol);
  for (std::size_t r = 0; r < b.size(); ++r) worst = std::max(worst, b[r] - act[r]);
  for (double v : sol.x) worst = std::max(worst, -v);
  for (double v : sol.y) worst = std::max(worst, -v);
  return worst;
}

MasterDuals to_master_duals(const LpModel& model, const std::vector<double>& row_duals) {
  MasterDuals d;
  for (std::size_t v = 0; v < model.lattice().type_count(); ++v) d.alpha.push_back(row_duals[v]);
  for (const auto& w : model.row_windows()) {
    const std::size_t r = *model.window_row(w);
    d.window[w] = {row_duals[r], row_duals[r + 1]};
  }
  return d;
}

namespace {

// Keeps a simplex instance in step with a growing model.
class Master {
 public:
  explicit Master(LpModel& model) : model_(model), simplex_(model.rhs()) {
    for (std::size_t j = 0; j < model_.x_columns().size(); ++j) push_x(j);
    for (std::size_t j = 0; j < model_.y_columns().size(); ++j) push_y(j);
  }

  void push_x(std::size_t j) {
    simplex_.add_column(model_.x_cost(j), model_.x_entries(j));
    map_.emplace_back(true, j);
  }
  void push_y(std::size_t j) {
    simplex_.add_column(0.0, model_.y_entries(j));
    map_.emplace_back(false, j);
  }

  LpSolution solve() {
    simplex_.solve();
    LpSolution sol;
    sol.x.assign(model_.x_columns().size(), 0.0);
    sol.y.assign(model_.y_columns().size(), 0.0);
    const auto values = simplex_.primal();
    for (std::size_t c = 0; c < values.size(); ++c) {
      (map_[c].first ? sol.x : sol.y)[map_[c].second] = values[c];
    }
    sol.duals = simplex_.duals();
    sol.objective = lp_objective(model_, sol);
    const auto b = model_.rhs();
    for (std::size_t r = 0; r < b.size(); ++r) sol.dual_objective += b[r] * sol.duals[r];
    return sol;
  }

 private:
  LpModel& model_;
  DenseSimplex simplex_;
  std::vector<std::pair<bool, std::size_t>> map_;
};

}  // namespace

LpSolution solve_master(const LpModel& model) {
  LpModel copy = model;
  Master master(copy);
  return master.solve();
}

ColumnGenerationResult column_generation(const Lattice& lattice, const CostFunction& f,
                                         const std::vector<ItemIndex>& small_items,
                                         const std::vector<Rational>& small_sizes,
                                         const ColumnGenerationOptions& options) {
  const Epsilon eps = lattice.eps();
  const double e = eps.as_double();
  const double kcc_eps = options.kcc_eps > 0 ? options.kcc_eps : e / (2.0 * (1.0 + e));
  const std::size_t grid_windows =
      static_cast<std::size_t>(lattice.grid().degenerate_t() + 1) *
      static_cast<std::size_t>(lattice.ell() + 1);
  const std::size_t limit =
      options.iteration_limit > 0
          ? options.iteration_limit
          : 10 * (lattice.type_count() + 2 * grid_windows + small_items.size());

  std::vector<Window> row_windows;
  if (!small_items.empty()) {
    for (int t = 0; t <= lattice.grid().top; ++t) {
      for (int a = 1; a <= lattice.p_limit(); ++a) row_windows.push_back({t, a});
    }
  }
  ColumnGenerationResult result{LpModel(lattice, f, small_items, small_sizes, row_windows), {}};
  LpModel& model = result.model;

  const std::size_t h = lattice.type_count();
  for (std::size_t v = 0; v < h; ++v) {
    ExtendedConfiguration ext{Configuration(h, 0), 1};
    ext.config[v] = 1;
    model.add_x({ext, lattice.main_window(ext)});
  }
  for (const auto& w : row_windows) {
    model.add_x({{Configuration(h, 0), w.a}, w});
  }
  for (std::size_t i = 0; i < small_items.size(); ++i) {
    for (const auto& w : row_windows) model.add_y(i, w);
  }

  Master master(model);
  const double target = 1.0 + e;
  while (true) {
    if (result.iterations >= limit) {
      throw LimitExceeded("column generation did not converge within " + std::to_string(limit) +
                          " iterations");
    }
    ++result.iterations;
    result.solution = master.solve();
    const double gap = result.solution.objective - result.solution.dual_objective;
    result.max_duality_gap = std::max(result.max_duality_gap, std::abs(gap));
    if (result.solution.dual_objective > result.solution.objective + 1e-6) {
      result.weak_duality_held = false;
    }

    const PricingResult priced =
        price_all(lattice, f, to_master_duals(model, result.solution.duals), kcc_eps);
    result.certified_ratio = priced.certified_ratio;
    result.found_ratio = priced.max_found_ratio;
    if (priced.certified_ratio <= target) break;

    std::size_t added = 0;
    for (const auto& pc : priced.violating) {
      GeneralizedConfiguration g = pc.column;
      // A window without rows contributes nothing; its main window gives the
      // same column with at least as much room.
      if (!model.window_row(g.window)) g.window = lattice.main_window(g.ext);
      const auto [j, inserted] = model.add_x(g);
      if (inserted) {
        master.push_x(j);
        ++added;
      }
    }
    if (added == 0) {
      throw NumericalFailure("column generation stalled: violated columns are already present");
    }
    result.columns_added += added;
  }
  return result;
}

ProjectionResult project_to_main_windows(const LpModel& model, const LpSolution& sol) {
  constexpr double kTol = 1e-12;
  const Lattice& lattice = model.lattice();
  std::set<Window> targets;
  for (std::size_t j = 0; j < sol.x.size(); ++j) {
    if (sol.x[j] > kTol) targets.insert(lattice.main_window(model.x_columns()[j].ext));
  }

  std::vector<Window> rows;
  for (const auto& w : model.row_windows()) {
    if (targets.count(w)) rows.push_back(w);
  }
  ProjectionResult out{LpModel(lattice, model.cost_function(), model.small_items(),
                               model.small_sizes(), rows),
                       {}, targets};
  LpModel& next = out.model;

  // Snapshot of the x mass on every window.
  std::map<Window, double> mass;
  for (std::size_t j = 0; j < sol.x.size(); ++j) {
    if (sol.x[j] > kTol) mass[model.x_columns()[j].window] += sol.x[j];
  }

  std::vector<double> x_new;
  auto bump_x = [&](const GeneralizedConfiguration& g, double v) {
    const auto [j, inserted] = next.add_x(g);
    if (inserted) x_new.push_back(0.0);
    x_new[j] += v;
  };
  // Carry over every existing column whose window stays, so the basis
  // search later sees the same candidates.
  for (std::size_t j = 0; j < model.x_columns().size(); ++j) {
    const auto& g = model.x_columns()[j];
    if (targets.count(g.window)) bump_x(g, 0.0);
  }

  std::map<std::pair<std::size_t, Window>, double> y_new;
  for (std::size_t j = 0; j < sol.y.size(); ++j) {
    const auto& [pos, w] = model.y_columns()[j];
    if (targets.count(w) && sol.y[j] > 0) y_new[{pos, w}] += sol.y[j];
  }

  for (std::size_t j = 0; j < sol.x.size(); ++j) {
    if (sol.x[j] <= kTol) continue;
    const auto& g = model.x_columns()[j];
    if (targets.count(g.window)) {
      bump_x(g, sol.x[j]);
      continue;
    }
    const Window main = lattice.main_window(g.ext);
    bump_x({g.ext, main}, sol.x[j]);
    const double share = sol.x[j] / mass[g.window];
    for (std::size_t k = 0; k < sol.y.size(); ++k) {
      const auto& [pos, w] = model.y_columns()[k];
      if (w != g.window || sol.y[k] <= 0) continue;
      if (!next.window_row(main)) {
        if (sol.y[k] * share > 1e-9) {
          throw InternalError("small items would move to a window without rows");
        }
        continue;
      }
      y_new[{pos, main}] += share * sol.y[k];
    }
  }

  for (std::size_t pos = 0; pos < model.small_items().size(); ++pos) {
    for (const auto& w : rows) next.add_y(pos, w);
  }
  out.solution.x = x_new;
  out.solution.y.assign(next.y_columns().size(), 0.0);
  for (const auto& [key, v] : y_new) {
    out.solution.y[next.add_y(key.first, key.second).first] += v;
  }
  out.solution.objective = lp_objective(next, out.solution);
  return out;
}

namespace {

struct DenseLp {
  Eigen::MatrixXd m;  // [A | -I]
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  std::size_t nx = 0;
  std::size_t ny = 0;
};

DenseLp densify(const LpModel& model) {
  DenseLp d;
  const auto rows = static_cast<Eigen::Index>(model.row_count());
  d.nx = model.x_columns().size();
  d.ny = model.y_columns().size();
  const auto n = static_cast<Eigen::Index>(d.nx + d.ny);
  d.m = Eigen::MatrixXd::Zero(rows, n + rows);
  d.c = Eigen::VectorXd::Zero(n + rows);
  for (std::size_t j = 0; j < d.nx; ++j) {
    for (const auto& [r, a] : model.x_entries(j)) d.m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = a;
    d.c[static_cast<Eigen::Index>(j)] = model.x_cost(j);
  }
  for (std::size_t j = 0; j < d.ny; ++j) {
    for (const auto& [r, a] : model.y_entries(j)) d.m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(d.nx + j)) = a;
  }
  for (Eigen::Index r = 0; r < rows; ++r) d.m(r, n + r) = -1.0;
  const auto b = model.rhs();
  d.b = Eigen::Map<const Eigen::VectorXd>(b.data(), rows);
  return d;
}

Eigen::VectorXd full_vector(const DenseLp& d, const LpSolution& sol) {
  const auto n = static_cast<Eigen::Index>(d.nx + d.ny);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(d.m.cols());
  for (std::size_t j = 0; j < d.nx; ++j) z[static_cast<Eigen::Index>(j)] = std::max(0.0, sol.x[j]);
  for (std::size_t j = 0; j < d.ny; ++j) z[static_cast<Eigen::Index>(d.nx + j)] = std::max(0.0, sol.y[j]);
  const Eigen::VectorXd act = d.m.leftCols(n) * z.head(n);
  for (Eigen::Index r = 0; r < d.b.size(); ++r) z[n + r] = std::max(0.0, act[r] - d.b[r]);
  return z;
}

std::vector<Eigen::Index> support_of(const Eigen::VectorXd& z, double tol) {
  std::vector<Eigen::Index> s;
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    if (z[j] > tol) s.push_back(j);
  }
  return s;
}

Eigen::MatrixXd columns(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& idx) {
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = m.col(idx[k]);
  return out;
}

constexpr double kSupportTol = 1e-10;
constexpr double kRankThreshold = 1e-9;

double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) <= 1e-9 ? r : v;
}

}  // namespace

bool is_basic(const LpModel& model, const LpSolution& sol) {
  const DenseLp d = densify(model);
  const Eigen::VectorXd z = full_vector(d, sol);
  const auto s = support_of(z, kSupportTol);
  if (s.empty()) return true;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(columns(d.m, s));
  lu.setThreshold(kRankThreshold);
  return lu.rank() == static_cast<Eigen::Index>(s.size());
}

LpSolution extract_basic(const LpModel& model, const LpSolution& sol) {
  const DenseLp d = densify(model);
  Eigen::VectorXd z = full_vector(d, sol);
  const double start_objective = d.c.dot(z);

  std::vector<Eigen::Index> s;
  for (Eigen::Index guard = 0; guard <= z.size(); ++guard) {
    s = support_of(z, kSupportTol);
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      if (z[j] <= kSupportTol) z[j] = 0.0;
    }
    if (s.empty()) break;
    const Eigen::MatrixXd ms = columns(d.m, s);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(ms);
    lu.setThreshold(kRankThreshold);
    if (lu.rank() == static_cast<Eigen::Index>(s.size())) break;
    Eigen::VectorXd dir = lu.kernel().col(0);
    dir /= dir.cwiseAbs().maxCoeff();
    double cd = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) cd += d.c[s[k]] * dir[static_cast<Eigen::Index>(k)];
    if (cd > 1e-12 || (cd >= -1e-12 && dir.minCoeff() >= -1e-12)) dir = -dir;
    double theta = std::numeric_limits<double>::infinity();
    std::size_t hit = s.size();
    for (std::size_t k = 0; k < s.size(); ++k) {
      const double dk = dir[static_cast<Eigen::Index>(k)];
      if (dk < -1e-12 && z[s[k]] / -dk < theta) {
        theta = z[s[k]] / -dk;
        hit = k;
      }
    }
    if (hit == s.size()) throw NumericalFailure("basis extraction found an unbounded direction");
    for (std::size_t k = 0; k < s.size(); ++k) z[s[k]] += theta * dir[static_cast<Eigen::Index>(k)];
    z[s[hit]] = 0.0;
  }

  // Recompute the support values from the linear system to shed drift.
  if (!s.empty()) {
    const Eigen::MatrixXd ms = columns(d.m, s);
    const Eigen::VectorXd vs = ms.colPivHouseholderQr().solve(d.b);
    if (vs.allFinite() && (ms * vs - d.b).lpNorm<Eigen::Infinity>() < 1e-8 && vs.minCoeff() > -1e-9) {
      for (std::size_t k = 0; k < s.size(); ++k) z[s[k]] = std::max(0.0, vs[static_cast<Eigen::Index>(k)]);
    }
  }

  LpSolution out;
  out.x.resize(d.nx);
  out.y.resize(d.ny);
  for (std::size_t j = 0; j < d.nx; ++j) out.x[j] = snap(z[static_cast<Eigen::Index>(j)]);
  for (std::size_t j = 0; j < d.ny; ++j) out.y[j] = snap(z[static_cast<Eigen::Index>(d.nx + j)]);
  out.objective = lp_objective(model, out);
  if (out.objective > start_objective + 1e-7 * std::max(1.0, start_objective)) {
    throw NumericalFailure("basis extraction increased the objective");
  }
  if (lp_max_violation(model, out) > 1e-7) {
    throw NumericalFailure("basis extraction lost feasibility");
  }
  return out;
}

void write_lp_format(const LpModel& model, std::ostream& out) {
  std::ostringstream num;
  num << std::setprecision(17);
  auto fmt = [&](double v) {
    num.str("");
    num << v;
    return num.str();
  };
  std::vector<std::vector<std::pair<std::string, double>>> rows(model.row_count());
  for (std::size_t j = 0; j < model.x_columns().size(); ++j) {
    for (const auto& [r, a] : model.x_entries(j)) rows[r].emplace_back(model.x_name(j), a);
  }
  for (std::size_t j = 0; j < model.y_columns().size(); ++j) {
    for (const auto& [r, a] : model.y_entries(j)) rows[r].emplace_back(model.y_name(j), a);
  }
  out << "\\ configuration LP restricted master\n";
  out << "Minimize\n obj:";
  for (std::size_t j = 0; j < model.x_columns().size(); ++j) {
    out << " + " << fmt(model.x_cost(j)) << ' ' << model.x_name(j);
  }
  out << "\nSubject To\n";
  const auto b = model.rhs();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << ' ' << model.row_name(r) << ':';
    if (rows[r].empty()) out << " 0 " << (model.x_columns().empty() ? "dummy" : model.x_name(0));
    for (const auto& [name, a] : rows[r]) out << (a < 0 ? " - " : " + ") << fmt(std::abs(a)) << ' ' << name;
    out << " >= " << fmt(b[r]) << '\n';
  }
  out << "End\n";
}

}  // namespace gcbp
