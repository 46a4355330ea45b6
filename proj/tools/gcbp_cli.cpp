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

// gcbp: solve, verify, generate and compare bin packing instances with
// cardinality costs.
//
// Exit codes: 0 success, 2 malformed input, 3 infeasible or failed
// verification, 4 solver limit exceeded, 5 internal failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gcbp/gcbp.h"

namespace {

struct Failure {
  int code;
  std::string message;
};

void check(gcbp_status status) {
  if (status != GCBP_OK) throw Failure{status, gcbp_last_error()};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{GCBP_ERR_INVALID_INPUT, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{GCBP_ERR_INVALID_INPUT, "cannot write " + path};
}

// Owns a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  gcbp_string_free(s);
  return out;
}

struct Instance {
  gcbp_instance* handle = nullptr;
  explicit Instance(const std::string& path) {
    check(gcbp_instance_from_json(read_text(path).c_str(), &handle));
  }
  Instance(const Instance&) = delete;
  Instance& operator=(const Instance&) = delete;
  ~Instance() { gcbp_instance_free(handle); }
};

struct Solution {
  gcbp_solution* handle = nullptr;
  Solution() = default;
  Solution(const Solution&) = delete;
  Solution& operator=(const Solution&) = delete;
  ~Solution() { gcbp_solution_free(handle); }
};

struct SolveArgs {
  std::string instance, cost, algorithm, eps, out, report, lp_dump;
  long h = 0;
  std::size_t exact_limit = 0;
};

int run_solve(const SolveArgs& a) {
  Instance instance(a.instance);
  gcbp_solve_options options{};
  options.eps = a.eps.empty() ? nullptr : a.eps.c_str();
  options.h_override = a.h;
  options.lp_dump_path = a.lp_dump.empty() ? nullptr : a.lp_dump.c_str();
  options.exact_limit = a.exact_limit;
  Solution solution;
  const auto start = std::chrono::steady_clock::now();
  check(gcbp_solve(instance.handle, a.cost.c_str(), a.algorithm.c_str(), &options,
                   &solution.handle));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char* json = nullptr;
  check(gcbp_solution_to_json(solution.handle, &json));
  const std::string text = take(json);
  if (!a.out.empty()) write_text(a.out, text);
  if (a.algorithm == "afptas") {
    char* report = nullptr;
    check(gcbp_solution_report_json(solution.handle, &report));
    std::string path = a.report;
    if (path.empty() && !a.out.empty()) path = a.out + ".report.json";
    const std::string body = take(report) + "\n";
    if (path.empty()) {
      std::cerr << body;
    } else {
      write_text(path, body);
    }
  }
  if (a.out.empty()) std::cout << text;
  std::fprintf(a.out.empty() ? stderr : stdout, "cost=%.10g bins=%zu runtime=%.6fs\n",
               gcbp_solution_cost(solution.handle), gcbp_solution_bin_count(solution.handle),
               seconds);
  return 0;
}

int run_verify(const std::string& instance_path, const std::string& solution_path,
               const std::string& cost) {
  Instance instance(instance_path);
  Solution solution;
  check(gcbp_solution_from_json(read_text(solution_path).c_str(), &solution.handle));
  double recomputed = 0.0;
  char* problems = nullptr;
  const gcbp_status status =
      gcbp_verify(instance.handle, solution.handle, cost.c_str(), &recomputed, &problems);
  if (status == GCBP_OK) {
    take(problems);
    std::printf("PASS cost=%.10g\n", recomputed);
    return 0;
  }
  if (status != GCBP_ERR_INFEASIBLE) throw Failure{status, gcbp_last_error()};
  std::printf("FAIL recomputed_cost=%.10g\n%s", recomputed, take(problems).c_str());
  return GCBP_ERR_INFEASIBLE;
}

int run_gen(const std::string& family, const std::vector<std::string>& params,
            std::uint64_t seed, const std::string& out) {
  std::string joined;
  for (const auto& p : params) joined += (joined.empty() ? "" : ",") + p;
  gcbp_instance* handle = nullptr;
  check(gcbp_instance_generate(family.c_str(), joined.c_str(), seed, &handle));
  char* json = nullptr;
  const gcbp_status status = gcbp_instance_to_json(handle, &json);
  gcbp_instance_free(handle);
  check(status);
  write_text(out, take(json));
  return 0;
}

int run_compare(const std::vector<std::string>& paths, const std::string& algorithms,
                const std::vector<std::string>& costs, const std::string& format,
                std::size_t exact_limit, const std::string& out) {
  std::vector<std::unique_ptr<Instance>> owned;
  std::vector<const gcbp_instance*> handles;
  std::vector<const char*> names;
  for (const auto& p : paths) {
    owned.push_back(std::make_unique<Instance>(p));
    handles.push_back(owned.back()->handle);
    names.push_back(p.c_str());
  }
  std::string joined;
  for (const auto& c : costs) joined += (joined.empty() ? "" : ";") + c;
  char* report = nullptr;
  check(gcbp_compare(handles.data(), names.data(), handles.size(), algorithms.c_str(),
                     joined.c_str(), format.c_str(), exact_limit, &report));
  write_text(out, take(report));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bin packing with concave cardinality costs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gcbp_version());

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Pack an instance");
  s->add_option("-i,--instance", solve.instance, "Instance file")->required();
  s->add_option("-c,--cost", solve.cost, "Cost spec: fq:<q> or table:v0,v1,...")->required();
  s->add_option("-a,--alg", solve.algorithm, std::string("Algorithm: ") + gcbp_algorithms())
      ->required();
  s->add_option("-e,--eps", solve.eps, "Accuracy for afptas, 1/k with k >= 3");
  s->add_option("-o,--out", solve.out, "Solution file (default: stdout)");
  s->add_option("--report", solve.report, "Stage report file for afptas");
  s->add_option("--lp-dump", solve.lp_dump, "Write the final LP of afptas in LP format");
  s->add_option("--split-threshold", solve.h, "Override the small-item split threshold");
  s->add_option("--exact-limit", solve.exact_limit, "Largest instance for exact");

  std::string v_instance, v_solution, v_cost;
  auto* v = app.add_subcommand("verify", "Re-verify a solution exactly");
  v->add_option("-i,--instance", v_instance, "Instance file")->required();
  v->add_option("-s,--solution", v_solution, "Solution file")->required();
  v->add_option("-c,--cost", v_cost, "Cost spec")->required();

  std::string family, gen_out;
  std::vector<std::string> params;
  std::uint64_t seed = 1;
  auto* g = app.add_subcommand("gen", "Generate an instance");
  g->add_option("-f,--family", family,
                "sec2_single_large, sec2_many_large, mh_tight, uniform_random, clustered_random")
      ->required();
  g->add_option("-p,--param", params, "key=value, repeatable (K, N, n, lo, hi, den, ...)");
  g->add_option("--seed", seed, "Random seed");
  g->add_option("-o,--out", gen_out, "Instance file (default: stdout)");

  std::vector<std::string> c_instances, c_costs;
  std::string c_algs = "nfi,nfd,ff-dec,mh", c_format = "csv", c_out;
  std::size_t c_exact = 12;
  auto* c = app.add_subcommand("compare", "Tabulate costs and ratios");
  c->add_option("-i,--instances", c_instances, "Instance files")->required();
  c->add_option("-a,--algs", c_algs, "Comma-separated algorithms");
  c->add_option("-c,--cost", c_costs, "Cost spec, repeatable")->required();
  c->add_option("--format", c_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  c->add_option("--exact-limit", c_exact, "Largest instance with an exact reference");
  c->add_option("-o,--out", c_out, "Report file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : GCBP_ERR_INVALID_INPUT;
  }

  try {
    if (s->parsed()) return run_solve(solve);
    if (v->parsed()) return run_verify(v_instance, v_solution, v_cost);
    if (g->parsed()) return run_gen(family, params, seed, gen_out);
    if (c->parsed()) return run_compare(c_instances, c_algs, c_costs, c_format, c_exact, c_out);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  return 0;
}
