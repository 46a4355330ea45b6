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

// File formats, cost specifications, algorithm dispatch, instance
// generators and the comparison harness used by the command-line tool.
//
// Instance file:  {"format":"gcbp-instance","version":1,"sizes":["3/4",...]}
// Solution file:  {"format":"gcbp-solution","version":1,"instance_digest":...,
//                  "algorithm":...,"cost_spec":...,"cost":...,"kind":...,
//                  "bins":[[0,3],[1,2]]}
// Fractional solutions store bins as [[{"item":0,"fraction":"1/2"}],...].

#ifndef GCBP_IO_HPP_
#define GCBP_IO_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcbp/afptas.hpp"
#include "gcbp/core_model.hpp"
#include "gcbp/structures.hpp"

namespace gcbp {

// Sizes are sorted on load; the file order is not preserved.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& instance);

// FNV-1a 64 over the canonical size strings, as 16 hex digits.
std::string instance_digest(const Instance& instance);

// "fq:<q>" or "table:v0,v1,...,vm". Tables shorter than the instance are
// extended with their last value.
struct CostSpec {
  std::string text;
  std::optional<int> q;
  std::vector<double> table;
};

CostSpec parse_cost_spec(const std::string& text);
CostFunction make_cost(const CostSpec& spec, std::size_t n);

enum class SolutionKind { kIntegral, kFractional };

struct Solution {
  std::string instance_digest;
  std::string algorithm;
  std::string cost_spec;
  double cost = 0.0;
  SolutionKind kind = SolutionKind::kIntegral;
  Packing packing;                // kIntegral
  FractionalPacking fractional;   // kFractional

  bool operator==(const Solution&) const = default;
};

Solution parse_solution(const std::string& text);
std::string serialize_solution(const Solution& solution);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// nf-inc, nf-dec, ff-inc, ff-dec, bf-inc, bf-dec, nfi, nfd, mh, fnfi, exact,
// afptas.
const std::vector<std::string>& algorithm_names();

struct SolveOptions {
  std::optional<Epsilon> eps;  // afptas only; defaults to 1/3
  AfptasOptions afptas;
  std::size_t exact_limit = 15;
};

struct SolveOutput {
  Solution solution;
  std::optional<AfptasReport> report;
};

SolveOutput solve(const Instance& instance, const CostSpec& cost, const std::string& algorithm,
                  const SolveOptions& options = {});

struct VerifyOutcome {
  bool ok = true;
  double recomputed_cost = 0.0;
  std::vector<std::string> problems;
};

// Exact re-verification against the instance plus recomputation of the cost.
VerifyOutcome verify_solution(const Instance& instance, const Solution& solution,
                              const CostSpec& cost);

using GeneratorParams = std::map<std::string, std::string>;

// Families: sec2_single_large (K), sec2_many_large (K), mh_tight (N, K),
// uniform_random (n, lo, hi), clustered_random (n, clusters, spread).
// Random families draw sizes as multiples of 1/den (param "den", default
// 1000). Deterministic for fixed (family, params, seed).
Instance generate_instance(const std::string& family, const GeneratorParams& params,
                           std::uint64_t seed);

struct CompareRow {
  std::string instance;
  std::string algorithm;
  std::string cost_spec;
  std::optional<double> cost;
  std::size_t bins = 0;
  std::string reference_kind;  // "exact", "lower_bound" or "none"
  std::optional<double> reference;
  std::optional<double> ratio;
  double seconds = 0.0;
  std::string error;
};

struct CompareOptions {
  SolveOptions solve;
  std::size_t exact_limit = 12;  // instances up to this size get an exact reference
};

// Rows in input order: for each instance, each cost spec, each algorithm.
// Failures are recorded in the row and the run continues.
std::vector<CompareRow> compare(const std::vector<std::pair<std::string, Instance>>& instances,
                                const std::vector<std::string>& algorithms,
                                const std::vector<CostSpec>& costs,
                                const CompareOptions& options = {});

std::string compare_to_csv(const std::vector<CompareRow>& rows);
// Rows plus per (algorithm, cost spec) aggregates of the ratio.
std::string compare_to_json(const std::vector<CompareRow>& rows);

}  // namespace gcbp

#endif  // GCBP_IO_HPP_
