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

#include "gcbp/gcbp.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <sstream>
#include <string>

#include "gcbp/errors.hpp"
#include "gcbp/io.hpp"

struct gcbp_instance {
  gcbp::Instance value;
};

struct gcbp_solution {
  gcbp::Solution value;
  std::optional<gcbp::AfptasReport> report;
};

namespace {

thread_local std::string g_last_error;

gcbp_status fail(gcbp_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `body`, translating exceptions to status codes.
template <typename Body>
gcbp_status guarded(Body&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const gcbp::InvalidInput& e) {
    return fail(GCBP_ERR_INVALID_INPUT, e.what());
  } catch (const gcbp::LimitExceeded& e) {
    return fail(GCBP_ERR_LIMIT, e.what());
  } catch (const gcbp::InternalError& e) {
    return fail(GCBP_ERR_INFEASIBLE, e.what());
  } catch (const gcbp::NumericalFailure& e) {
    return fail(GCBP_ERR_INTERNAL, std::string("numerical failure: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(GCBP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GCBP_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

#define GCBP_REQUIRE(cond, what) \
  if (!(cond)) return fail(GCBP_ERR_INVALID_INPUT, what)

}  // namespace

extern "C" {

const char* gcbp_version(void) { return "0.1.0"; }

const char* gcbp_last_error(void) { return g_last_error.c_str(); }

const char* gcbp_algorithms(void) {
  static const std::string joined = [] {
    std::string s;
    for (const auto& name : gcbp::algorithm_names()) s += (s.empty() ? "" : ",") + name;
    return s;
  }();
  return joined.c_str();
}

void gcbp_string_free(char* s) { std::free(s); }

gcbp_status gcbp_instance_from_json(const char* text, gcbp_instance** out) {
  GCBP_REQUIRE(text != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = new gcbp_instance{gcbp::parse_instance(text)};
    return GCBP_OK;
  });
}

gcbp_status gcbp_instance_from_sizes(const char* const* sizes, size_t count,
                                     gcbp_instance** out) {
  GCBP_REQUIRE(out != nullptr && (sizes != nullptr || count == 0), "null argument");
  return guarded([&] {
    std::vector<gcbp::Rational> values;
    for (size_t i = 0; i < count; ++i) {
      if (sizes[i] == nullptr) throw gcbp::InvalidInput("null size string");
      values.push_back(gcbp::parse_rational(sizes[i]));
    }
    *out = new gcbp_instance{gcbp::Instance::FromUnsorted(std::move(values))};
    return GCBP_OK;
  });
}

gcbp_status gcbp_instance_generate(const char* family, const char* params, uint64_t seed,
                                   gcbp_instance** out) {
  GCBP_REQUIRE(family != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    gcbp::GeneratorParams map;
    for (const auto& kv : split(params ? params : "", ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw gcbp::InvalidInput("parameter '" + kv + "' lacks '='");
      map[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    *out = new gcbp_instance{gcbp::generate_instance(family, map, seed)};
    return GCBP_OK;
  });
}

void gcbp_instance_free(gcbp_instance* instance) { delete instance; }

size_t gcbp_instance_size(const gcbp_instance* instance) {
  return instance ? instance->value.size() : 0;
}

gcbp_status gcbp_instance_to_json(const gcbp_instance* instance, char** out) {
  GCBP_REQUIRE(instance != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = dup_string(gcbp::serialize_instance(instance->value));
    return GCBP_OK;
  });
}

gcbp_status gcbp_instance_digest(const gcbp_instance* instance, char** out) {
  GCBP_REQUIRE(instance != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = dup_string(gcbp::instance_digest(instance->value));
    return GCBP_OK;
  });
}

gcbp_status gcbp_solve(const gcbp_instance* instance, const char* cost_spec,
                       const char* algorithm, const gcbp_solve_options* options,
                       gcbp_solution** out) {
  GCBP_REQUIRE(instance != nullptr && cost_spec != nullptr && algorithm != nullptr &&
                   out != nullptr,
               "null argument");
  return guarded([&] {
    gcbp::SolveOptions opts;
    if (options != nullptr) {
      if (options->eps != nullptr) opts.eps = gcbp::Epsilon::Parse(options->eps);
      if (options->h_override > 0) opts.afptas.h_override = options->h_override;
      if (options->lp_dump_path != nullptr) opts.afptas.lp_dump_path = options->lp_dump_path;
      if (options->exact_limit > 0) opts.exact_limit = options->exact_limit;
    }
    gcbp::SolveOutput result =
        gcbp::solve(instance->value, gcbp::parse_cost_spec(cost_spec), algorithm, opts);
    *out = new gcbp_solution{std::move(result.solution), std::move(result.report)};
    return GCBP_OK;
  });
}

gcbp_status gcbp_solution_from_json(const char* text, gcbp_solution** out) {
  GCBP_REQUIRE(text != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = new gcbp_solution{gcbp::parse_solution(text), std::nullopt};
    return GCBP_OK;
  });
}

void gcbp_solution_free(gcbp_solution* solution) { delete solution; }

double gcbp_solution_cost(const gcbp_solution* solution) {
  return solution ? solution->value.cost : 0.0;
}

size_t gcbp_solution_bin_count(const gcbp_solution* solution) {
  if (solution == nullptr) return 0;
  return solution->value.kind == gcbp::SolutionKind::kIntegral
             ? solution->value.packing.bin_count()
             : solution->value.fractional.bins.size();
}

gcbp_status gcbp_solution_to_json(const gcbp_solution* solution, char** out) {
  GCBP_REQUIRE(solution != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = dup_string(gcbp::serialize_solution(solution->value));
    return GCBP_OK;
  });
}

gcbp_status gcbp_solution_report_json(const gcbp_solution* solution, char** out) {
  GCBP_REQUIRE(solution != nullptr && out != nullptr, "null argument");
  GCBP_REQUIRE(solution->report.has_value(), "solution carries no scheme report");
  return guarded([&] {
    *out = dup_string(gcbp::report_to_json(*solution->report));
    return GCBP_OK;
  });
}

gcbp_status gcbp_verify(const gcbp_instance* instance, const gcbp_solution* solution,
                        const char* cost_spec, double* recomputed_cost, char** problems) {
  GCBP_REQUIRE(instance != nullptr && solution != nullptr && cost_spec != nullptr,
               "null argument");
  return guarded([&] {
    const gcbp::VerifyOutcome outcome = gcbp::verify_solution(
        instance->value, solution->value, gcbp::parse_cost_spec(cost_spec));
    if (recomputed_cost != nullptr) *recomputed_cost = outcome.recomputed_cost;
    std::string joined;
    for (const auto& p : outcome.problems) joined += p + "\n";
    if (problems != nullptr) *problems = dup_string(joined);
    if (outcome.ok) return GCBP_OK;
    return fail(GCBP_ERR_INFEASIBLE, outcome.problems.front());
  });
}

gcbp_status gcbp_compare(const gcbp_instance* const* instances, const char* const* names,
                         size_t count, const char* algorithms, const char* cost_specs,
                         const char* format, size_t exact_limit, char** out) {
  GCBP_REQUIRE((instances != nullptr || count == 0) && algorithms != nullptr &&
                   cost_specs != nullptr && format != nullptr && out != nullptr,
               "null argument");
  return guarded([&] {
    const std::string fmt = format;
    if (fmt != "csv" && fmt != "json") throw gcbp::InvalidInput("format must be csv or json");
    std::vector<std::pair<std::string, gcbp::Instance>> list;
    for (size_t i = 0; i < count; ++i) {
      if (instances[i] == nullptr) throw gcbp::InvalidInput("null instance");
      std::string name = names != nullptr && names[i] != nullptr ? names[i] : std::to_string(i);
      list.emplace_back(std::move(name), instances[i]->value);
    }
    std::vector<gcbp::CostSpec> costs;
    for (const auto& spec : split(cost_specs, ';')) costs.push_back(gcbp::parse_cost_spec(spec));
    gcbp::CompareOptions options;
    options.exact_limit = exact_limit;
    const auto rows = gcbp::compare(list, split(algorithms, ','), costs, options);
    *out = dup_string(fmt == "csv" ? gcbp::compare_to_csv(rows) : gcbp::compare_to_json(rows));
    return GCBP_OK;
  });
}

}  // extern "C"
