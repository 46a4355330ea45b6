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

#include "gcbp/afptas.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "gcbp/errors.hpp"
#include "gcbp/fractional.hpp"
#include "json.hpp"

namespace gcbp {
namespace {

constexpr double kIntegrality = 1e-9;

bool is_integral(double v) { return std::abs(v - std::round(v)) <= kIntegrality; }

struct WorkBin {
  std::size_t column = 0;
  std::vector<ItemIndex> large;
  std::vector<ItemIndex> smalls;
  Rational large_load = 0;
  std::size_t dealt = 0;
  std::size_t excess = 0;
};

// Puts consecutive runs of `per_bin` groups into one bin each.
template <typename Group>
std::size_t pack_groups(const std::vector<Group>& groups, std::size_t per_bin, Packing& out) {
  std::size_t bins = 0;
  for (std::size_t i = 0; i < groups.size(); i += per_bin) {
    auto& bin = out.bins.emplace_back();
    for (std::size_t j = i; j < std::min(groups.size(), i + per_bin); ++j) {
      if constexpr (std::is_same_v<Group, ItemIndex>) {
        bin.push_back(groups[j]);
      } else {
        bin.insert(bin.end(), groups[j].begin(), groups[j].end());
      }
    }
    ++bins;
  }
  return bins;
}

}  // namespace

RoundingResult round_solution(const LpSolution& basic, const RoundingContext& ctx) {
  const Instance& instance = *ctx.instance;
  const GroupingResult& g = *ctx.grouping;
  const LpModel& model = *ctx.model;
  const Lattice& lattice = model.lattice();
  const auto per_bin = static_cast<std::size_t>(ctx.eps.k());
  RoundingResult out;

  // (a) Small items with a fractional assignment get their own bin; the
  // others go to one window carrying a full unit.
  std::vector<std::vector<std::size_t>> y_of(model.small_items().size());
  for (std::size_t j = 0; j < model.y_columns().size(); ++j) {
    y_of[model.y_columns()[j].first].push_back(j);
  }
  std::map<Window, std::vector<ItemIndex>> assigned;
  std::vector<ItemIndex> fallback;
  for (std::size_t pos = 0; pos < y_of.size(); ++pos) {
    const ItemIndex item = model.small_items()[pos];
    std::size_t fractional = 0;
    std::optional<Window> chosen;
    for (std::size_t j : y_of[pos]) {
      const double v = basic.y[j];
      if (!is_integral(v)) ++fractional;
      if (!chosen && std::round(v) >= 1) chosen = model.y_columns()[j].second;
    }
    if (fractional > 0) {
      out.packing.bins.push_back({item});
      ++out.dedicated_bins;
      out.fractional_y += fractional;
      continue;
    }
    if (!chosen) {
      fallback.push_back(item);
      continue;
    }
    assigned[*chosen].push_back(item);
  }

  // (b) Round configuration counts up and (c) fill the large-item slots.
  std::vector<WorkBin> bins;
  for (std::size_t j = 0; j < basic.x.size(); ++j) {
    const double v = basic.x[j];
    if (!is_integral(v)) ++out.fractional_x;
    const auto copies = static_cast<std::size_t>(std::max(0.0, std::ceil(v - kIntegrality)));
    for (std::size_t c = 0; c < copies; ++c) bins.push_back({j, {}, {}, 0, 0, 0});
  }
  std::vector<std::vector<ItemIndex>> by_type(lattice.type_count());
  for (std::size_t c = 1; c < g.classes.size(); ++c) {
    for (ItemIndex i : g.classes[c]) by_type[g.type_of[i]].push_back(i);
  }
  for (std::size_t v = 0; v < by_type.size(); ++v) {
    std::size_t next = 0;
    for (auto& bin : bins) {
      const int slots = model.x_columns()[bin.column].ext.config[v];
      for (int s = 0; s < slots && next < by_type[v].size(); ++s) {
        const ItemIndex i = by_type[v][next++];
        bin.large.push_back(i);
        bin.large_load += instance.size_of(i);
      }
    }
    fallback.insert(fallback.end(), by_type[v].begin() + static_cast<std::ptrdiff_t>(next),
                    by_type[v].end());
  }

  // (d) Round-robin within each window, largest items first.
  for (auto& [window, items] : assigned) {
    std::vector<std::size_t> targets;
    for (std::size_t b = 0; b < bins.size(); ++b) {
      if (model.x_columns()[bins[b].column].window == window) targets.push_back(b);
    }
    if (targets.empty() || lattice.degenerate(window)) {
      fallback.insert(fallback.end(), items.begin(), items.end());
      continue;
    }
    std::sort(items.begin(), items.end());  // index order is non-increasing size
    for (std::size_t q = 0; q < items.size(); ++q) {
      bins[targets[q % targets.size()]].smalls.push_back(items[q]);
    }
  }
  for (auto& bin : bins) bin.dealt = bin.smalls.size();

  // (e) Remove the largest small item of every bin.
  std::vector<ItemIndex> removed;
  for (auto& bin : bins) {
    if (bin.smalls.empty()) continue;
    removed.push_back(bin.smalls.front());
    bin.smalls.erase(bin.smalls.begin());
  }

  // (f) Refill greedily, smallest first; the first misfit is special, the
  // rest are excess.
  std::vector<ItemIndex> specials;
  std::vector<std::pair<std::size_t, std::vector<ItemIndex>>> excess;  // (kappa, items)
  for (auto& bin : bins) {
    std::vector<ItemIndex> smalls = bin.smalls;
    std::sort(smalls.begin(), smalls.end(), std::greater<>());
    bin.smalls.clear();
    Rational load = bin.large_load;
    std::vector<ItemIndex> extra;
    bool special_taken = false;
    for (ItemIndex i : smalls) {
      if (!special_taken && load + instance.size_of(i) <= 1) {
        load += instance.size_of(i);
        bin.smalls.push_back(i);
      } else if (!special_taken) {
        specials.push_back(i);
        special_taken = true;
      } else {
        extra.push_back(i);
      }
    }
    bin.excess = extra.size();
    if (!extra.empty()) {
      excess.emplace_back(lattice.kappa(model.x_columns()[bin.column].window.a), std::move(extra));
    }
  }

  for (auto& bin : bins) {
    std::vector<ItemIndex> contents = bin.large;
    contents.insert(contents.end(), bin.smalls.begin(), bin.smalls.end());
    if (contents.empty()) continue;
    const auto& col = model.x_columns()[bin.column];
    out.configuration_bins.push_back({out.packing.bins.size(), bin.column,
                                      lattice.kappa(col.ext.p), lattice.kappa(col.window.a),
                                      bin.dealt, bin.excess});
    out.packing.bins.push_back(std::move(contents));
  }
  out.removed_bins = pack_groups(removed, per_bin, out.packing);
  out.special_bins = pack_groups(specials, per_bin, out.packing);

  // (g) Excess subsets by non-increasing window cardinality.
  std::stable_sort(excess.begin(), excess.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::vector<ItemIndex>> subsets;
  for (auto& e : excess) subsets.push_back(std::move(e.second));
  out.excess_bins = pack_groups(subsets, per_bin, out.packing);

  for (ItemIndex i : fallback) {
    out.packing.bins.push_back({i});
    ++out.fallback_bins;
  }

  for (std::size_t b = 0; b < out.packing.bins.size(); ++b) {
    Rational load = 0;
    for (ItemIndex i : out.packing.bins[b]) load += instance.size_of(i);
    if (load > 1) {
      throw InternalError("rounding built bin " + std::to_string(b) + " of size " +
                          to_string(load));
    }
  }
  return out;
}

AfptasResult run_afptas(const Instance& instance, const CostFunction& f, Epsilon eps,
                        const AfptasOptions& options) {
  AfptasResult result;
  AfptasReport& rep = result.report;
  rep.eps = eps.to_string();
  const std::size_t n = instance.size();
  const auto k = static_cast<std::size_t>(eps.k());
  auto add_stage = [&](const std::string& name, std::size_t first_bin) {
    StageRecord s{name, 0, 0.0};
    for (std::size_t b = first_bin; b < result.packing.bins.size(); ++b) {
      if (result.packing.bins[b].empty()) continue;
      ++s.bins;
      s.cost += f(result.packing.bins[b].size());
    }
    rep.stages.push_back(s);
  };

  if (n <= k) {
    rep.base_case = true;
    for (ItemIndex i = 0; i < n; ++i) result.packing.bins.push_back({i});
    add_stage("singletons", 0);
    result.cost = eval_cost(f, result.packing);
    rep.cost = result.cost;
    return result;
  }

  const GroupingResult g = linear_grouping(instance, eps);
  rep.large_items = g.large.size();
  rep.small_items = g.small.size();
  rep.first_class_items = g.first_class.size();
  rep.types = g.type_sizes.size();
  for (ItemIndex i : g.first_class) result.packing.bins.push_back({i});
  add_stage("first_class", 0);

  Staircase stairs = build_staircase(f, eps, n);
  rep.staircase = stairs.k;
  rep.staircase_maximal = staircase_is_maximal(stairs, f, eps, n);

  // Main windows over the widest grid the small items could induce; this
  // fixes h before the split is known.
  Rational s_min_all = eps.value();
  for (auto it = g.small.rbegin(); it != g.small.rend(); ++it) {
    if (instance.size_of(*it) > 0) {
      s_min_all = instance.size_of(*it);
      break;
    }
  }
  const Lattice wide(eps, g.type_sizes, g.type_counts, stairs, build_windows(eps, s_min_all),
                     stairs.ell());
  const std::vector<Configuration> configs =
      wide.enumerate_configurations(options.configuration_budget);
  rep.configurations = configs.size();
  rep.main_windows_bound = wide.main_windows(configs, wide.ell()).size();
  long h = static_cast<long>((g.type_sizes.size() + 2 * rep.main_windows_bound + 1) * k);
  h = std::max(h, static_cast<long>(k));
  if (options.h_override) {
    if (*options.h_override < static_cast<long>(k)) {
      throw InvalidInput("split threshold override must be at least 1/eps");
    }
    h = *options.h_override;
    rep.h_overridden = true;
  }
  rep.h = h;

  const SmallSplit split = split_small(instance, g.small, h);
  rep.kept_small_items = split.kept.size();
  rep.suffix_small_items = split.suffix.size();
  {
    const std::size_t first = result.packing.bins.size();
    for (auto& bin : fnfi_split_repair(instance, split.suffix).packing.bins) {
      result.packing.bins.push_back(std::move(bin));
    }
    add_stage("suffix_small", first);
  }

  Rational delta(eps.k());
  Rational grid_min = eps.value();
  if (!split.kept.empty()) {
    grid_min = instance.size_of(split.kept.back());
    delta = 1 / grid_min;
    delta.canonicalize();
  }
  rep.delta = to_string(delta);
  const std::size_t p_delta = breakpoint_at_least(stairs, delta);
  const Lattice lattice(eps, g.type_sizes, g.type_counts, stairs, build_windows(eps, grid_min),
                        p_delta);
  rep.p_limit = static_cast<std::size_t>(lattice.p_limit());
  rep.window_top = lattice.grid().top;
  rep.grid_windows = static_cast<std::size_t>(lattice.grid().degenerate_t() + 1) *
                     static_cast<std::size_t>(lattice.ell() + 1);
  rep.main_windows = lattice.main_windows(configs, lattice.p_limit()).size();

  std::vector<Rational> reduced;
  for (std::size_t c = 1; c < g.classes.size(); ++c) {
    for (ItemIndex i : g.classes[c]) reduced.push_back(g.rounded[i]);
  }
  std::vector<Rational> kept_sizes;
  for (ItemIndex i : split.kept) {
    kept_sizes.push_back(instance.size_of(i));
    reduced.push_back(instance.size_of(i));
  }
  result.reduced_instance = Instance::FromUnsorted(reduced);

  if (!reduced.empty()) {
    ColumnGenerationResult cg =
        column_generation(lattice, f, split.kept, kept_sizes, options.column_generation);
    rep.lp_iterations = cg.iterations;
    rep.lp_columns = cg.model.x_columns().size();
    rep.lp_objective = cg.solution.objective;
    rep.certified_ratio = cg.certified_ratio;
    rep.found_ratio = cg.found_ratio;
    rep.weak_duality_held = cg.weak_duality_held;
    rep.max_lp_violation = lp_max_violation(cg.model, cg.solution);
    if (options.lp_dump_path) {
      std::ofstream dump(*options.lp_dump_path);
      if (!dump) throw InvalidInput("cannot write LP dump to " + *options.lp_dump_path);
      write_lp_format(cg.model, dump);
    }

    ProjectionResult proj = project_to_main_windows(cg.model, cg.solution);
    rep.support_windows = proj.windows.size();
    rep.row_windows = proj.model.row_windows().size();
    rep.projected_objective = proj.solution.objective;
    if (std::abs(rep.projected_objective - rep.lp_objective) >
        1e-9 * std::max(1.0, rep.lp_objective)) {
      throw InternalError("projection changed the LP objective");
    }
    const double proj_violation = lp_max_violation(proj.model, proj.solution);
    rep.max_lp_violation = std::max(rep.max_lp_violation, proj_violation);
    if (proj_violation > 1e-7) throw NumericalFailure("projected LP solution is infeasible");

    const LpSolution basic = extract_basic(proj.model, proj.solution);
    rep.basic_objective = basic.objective;

    const RoundingResult rounded = round_solution(basic, {&instance, &g, &proj.model, eps});
    rep.fractional_x = rounded.fractional_x;
    rep.fractional_y = rounded.fractional_y;
    rep.fractional_bound = lattice.type_count() + 2 * rep.row_windows;
    if (rep.fractional_x + rep.fractional_y > rep.fractional_bound) {
      throw InternalError("basic solution has more fractional components than rows allow");
    }
    rep.fallback_bins = rounded.fallback_bins;

    const std::size_t offset = result.packing.bins.size();
    std::size_t cursor = offset;
    auto append = [&](std::size_t count, const std::string& name) {
      const std::size_t first = result.packing.bins.size();
      for (std::size_t b = 0; b < count; ++b) {
        result.packing.bins.push_back(rounded.packing.bins[cursor - offset + b]);
      }
      cursor += count;
      add_stage(name, first);
    };
    append(rounded.dedicated_bins, "dedicated_small");
    for (auto cb : rounded.configuration_bins) {
      cb.bin += offset;
      rep.configuration_bins.push_back(cb);
    }
    append(rounded.configuration_bins.size(), "configurations");
    append(rounded.removed_bins, "removed_small");
    append(rounded.special_bins, "special_small");
    append(rounded.excess_bins, "excess_small");
    append(rounded.packing.bins.size() - (cursor - offset), "fallback");

    const double slack = 1.0 + eps.as_double();
    for (const auto& cb : rep.configuration_bins) {
      const double cost = f(result.packing.bins[cb.bin].size());
      if (cost > slack * f(cb.k_p) + kCostTolerance) {
        throw InternalError("configuration bin " + std::to_string(cb.bin) +
                            " costs more than (1+eps) f(k_p)");
      }
    }
  }

  const Verdict verdict = verify_packing(instance, result.packing);
  if (!verdict.ok()) {
    throw InternalError("scheme produced an invalid packing: " + verdict.violations.front().detail);
  }
  result.cost = eval_cost(f, result.packing);
  rep.cost = result.cost;
  return result;
}

std::string report_to_json(const AfptasReport& r) {
  nlohmann::json j;
  j["eps"] = r.eps;
  j["base_case"] = r.base_case;
  j["stages"] = nlohmann::json::array();
  for (const auto& s : r.stages) {
    j["stages"].push_back({{"name", s.name}, {"bins", s.bins}, {"cost", s.cost}});
  }
  j["items"] = {{"large", r.large_items},
                {"small", r.small_items},
                {"first_class", r.first_class_items},
                {"kept_small", r.kept_small_items},
                {"suffix_small", r.suffix_small_items}};
  j["h"] = r.h;
  j["h_overridden"] = r.h_overridden;
  j["main_windows_bound"] = r.main_windows_bound;
  j["types"] = r.types;
  j["staircase"] = r.staircase;
  j["ell"] = r.staircase.empty() ? 0 : r.staircase.size() - 1;
  j["staircase_maximal"] = r.staircase_maximal;
  j["p_limit"] = r.p_limit;
  j["delta"] = r.delta;
  j["window_top"] = r.window_top;
  j["windows"] = {{"grid", r.grid_windows},
                  {"main", r.main_windows},
                  {"support", r.support_windows},
                  {"rows", r.row_windows}};
  j["configurations"] = r.configurations;
  j["lp"] = {{"iterations", r.lp_iterations},
             {"columns", r.lp_columns},
             {"objective", r.lp_objective},
             {"projected_objective", r.projected_objective},
             {"basic_objective", r.basic_objective},
             {"certified_ratio", r.certified_ratio},
             {"found_ratio", r.found_ratio},
             {"weak_duality_held", r.weak_duality_held},
             {"max_violation", r.max_lp_violation}};
  j["fractional"] = {{"x", r.fractional_x}, {"y", r.fractional_y}, {"bound", r.fractional_bound}};
  j["configuration_bins"] = r.configuration_bins.size();
  j["fallback_bins"] = r.fallback_bins;
  j["cost"] = r.cost;
  return j.dump(2);
}

}  // namespace gcbp
