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

#include "gcbp/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "gcbp/errors.hpp"
#include "gcbp/exact.hpp"
#include "gcbp/fractional.hpp"
#include "gcbp/heuristics.hpp"
#include "json.hpp"

namespace gcbp {
namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

void expect_header(const json& j, const std::string& format) {
  if (!j.is_object() || j.value("format", "") != format) {
    throw InvalidInput("expected a \"" + format + "\" document");
  }
  if (j.value("version", 0) != 1) throw InvalidInput("unsupported " + format + " version");
}

Rational size_from_json(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw InvalidInput("sizes must be rational strings such as \"3/4\"");
}

ItemIndex item_from_json(const json& v) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long>() >= 0)) {
    throw InvalidInput("item indices must be non-negative integers");
  }
  return v.get<ItemIndex>();
}

const char* kind_name(SolutionKind kind) {
  return kind == SolutionKind::kIntegral ? "integral" : "fractional";
}

long long_param(const GeneratorParams& params, const std::string& key,
                std::optional<long> fallback = std::nullopt) {
  auto it = params.find(key);
  if (it == params.end()) {
    if (fallback) return *fallback;
    throw InvalidInput("missing generator parameter '" + key + "'");
  }
  try {
    std::size_t used = 0;
    const long v = std::stol(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("parameter '" + key + "' is not an integer: " + it->second);
  }
}

Rational rational_param(const GeneratorParams& params, const std::string& key,
                        const Rational& fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : parse_rational(it->second);
}

// Uniform integer in [lo, hi]; modulo reduction keeps results identical
// across standard libraries.
long draw(std::mt19937_64& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

Instance random_instance(const std::string& family, const GeneratorParams& params,
                         std::uint64_t seed) {
  const long n = long_param(params, "n");
  const long den = long_param(params, "den", 1000);
  if (n < 0) throw InvalidInput("n must be >= 0");
  if (den < 1) throw InvalidInput("den must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Rational> sizes;
  sizes.reserve(static_cast<std::size_t>(n));
  if (family == "uniform_random") {
    const Rational lo = rational_param(params, "lo", Rational(1, den));
    const Rational hi = rational_param(params, "hi", Rational(1));
    if (lo < 0 || hi > 1 || lo > hi) throw InvalidInput("need 0 <= lo <= hi <= 1");
    mpz_class lo_num(Rational(lo * den));
    mpz_class hi_num(Rational(hi * den));  // truncation is floor for non-negative values
    if (lo * den != Rational(lo_num)) lo_num += 1;
    if (lo_num > hi_num) throw InvalidInput("no multiple of 1/den in [lo, hi]");
    for (long i = 0; i < n; ++i) {
      sizes.push_back(make_rational(draw(rng, lo_num.get_si(), hi_num.get_si()), den));
    }
  } else {
    const long clusters = long_param(params, "clusters", 3);
    const Rational spread = rational_param(params, "spread", Rational(1, 20));
    if (clusters < 1) throw InvalidInput("clusters must be >= 1");
    if (spread < 0 || spread > Rational(1, 2)) throw InvalidInput("spread must lie in [0, 1/2]");
    const long half = mpz_class(Rational(spread * den)).get_si();
    std::vector<long> centers;
    for (long c = 0; c < clusters; ++c) centers.push_back(draw(rng, half, den - half));
    for (long i = 0; i < n; ++i) {
      const long center = centers[static_cast<std::size_t>(draw(rng, 0, clusters - 1))];
      const long v = std::clamp(center + draw(rng, -half, half), 1L, den);
      sizes.push_back(make_rational(v, den));
    }
  }
  return Instance::FromUnsorted(std::move(sizes));
}

double ratio_reference(const Instance& instance, const CostSpec& spec, const CostFunction& f) {
  double bound = eval_fractional_cost(f, fnfi(instance, f));
  if (spec.q) bound = std::max(bound, lower_bound_fk(instance, *spec.q));
  return bound;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const json j = parse_json(text);
  expect_header(j, "gcbp-instance");
  if (!j.contains("sizes") || !j["sizes"].is_array()) throw InvalidInput("missing sizes array");
  std::vector<Rational> sizes;
  for (const auto& v : j["sizes"]) sizes.push_back(size_from_json(v));
  return Instance::FromUnsorted(std::move(sizes));
}

std::string serialize_instance(const Instance& instance) {
  json j;
  j["format"] = "gcbp-instance";
  j["version"] = 1;
  j["sizes"] = json::array();
  for (const auto& s : instance.sizes()) j["sizes"].push_back(to_string(s));
  return j.dump(1) + "\n";
}

std::string instance_digest(const Instance& instance) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ULL;
  };
  for (const auto& s : instance.sizes()) {
    for (char c : to_string(s)) mix(static_cast<unsigned char>(c));
    mix('\n');
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CostSpec parse_cost_spec(const std::string& text) {
  CostSpec spec;
  spec.text = text;
  if (text.rfind("fq:", 0) == 0) {
    try {
      std::size_t used = 0;
      const int q = std::stoi(text.substr(3), &used);
      if (used != text.size() - 3 || q < 1) throw std::invalid_argument("q");
      spec.q = q;
    } catch (const std::exception&) {
      throw InvalidInput("cost spec 'fq:<q>' needs an integer q >= 1, got '" + text + "'");
    }
    return spec;
  }
  if (text.rfind("table:", 0) == 0) {
    std::stringstream in(text.substr(6));
    std::string cell;
    while (std::getline(in, cell, ',')) {
      try {
        std::size_t used = 0;
        spec.table.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument("value");
      } catch (const std::exception&) {
        throw InvalidInput("bad cost table value '" + cell + "'");
      }
    }
    if (spec.table.size() < 2) throw InvalidInput("cost table needs at least f(0) and f(1)");
    make_cost_function(spec.table);  // validates
    return spec;
  }
  throw InvalidInput("cost spec must be 'fq:<q>' or 'table:v0,v1,...', got '" + text + "'");
}

CostFunction make_cost(const CostSpec& spec, std::size_t n) {
  n = std::max<std::size_t>(n, 1);
  if (spec.q) return make_fq(*spec.q, n);
  std::vector<double> values = spec.table;
  if (values.empty()) throw InvalidInput("empty cost spec");
  while (values.size() < n + 1) values.push_back(values.back());
  return make_cost_function(std::move(values));
}

Solution parse_solution(const std::string& text) {
  const json j = parse_json(text);
  expect_header(j, "gcbp-solution");
  Solution s;
  try {
    s.instance_digest = j.at("instance_digest").get<std::string>();
    s.algorithm = j.at("algorithm").get<std::string>();
    s.cost_spec = j.at("cost_spec").get<std::string>();
    s.cost = j.at("cost").get<double>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "integral") {
      s.kind = SolutionKind::kIntegral;
    } else if (kind == "fractional") {
      s.kind = SolutionKind::kFractional;
    } else {
      throw InvalidInput("unknown solution kind '" + kind + "'");
    }
    for (const auto& bin : j.at("bins")) {
      if (!bin.is_array()) throw InvalidInput("each bin must be an array");
      if (s.kind == SolutionKind::kIntegral) {
        auto& dst = s.packing.bins.emplace_back();
        for (const auto& v : bin) dst.push_back(item_from_json(v));
      } else {
        auto& dst = s.fractional.bins.emplace_back();
        for (const auto& part : bin) {
          dst.push_back({item_from_json(part.at("item")),
                         parse_rational(part.at("fraction").get<std::string>())});
        }
      }
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed solution: ") + e.what());
  }
  return s;
}

std::string serialize_solution(const Solution& s) {
  json j;
  j["format"] = "gcbp-solution";
  j["version"] = 1;
  j["instance_digest"] = s.instance_digest;
  j["algorithm"] = s.algorithm;
  j["cost_spec"] = s.cost_spec;
  j["cost"] = s.cost;
  j["kind"] = kind_name(s.kind);
  j["bins"] = json::array();
  if (s.kind == SolutionKind::kIntegral) {
    for (const auto& bin : s.packing.bins) j["bins"].push_back(bin);
  } else {
    for (const auto& bin : s.fractional.bins) {
      json parts = json::array();
      for (const auto& p : bin) {
        parts.push_back({{"item", p.item}, {"fraction", to_string(p.fraction)}});
      }
      j["bins"].push_back(parts);
    }
  }
  return j.dump() + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << contents)) throw InvalidInput("cannot write " + path);
}

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {
      "nf-inc", "nf-dec", "ff-inc", "ff-dec", "bf-inc", "bf-dec",
      "nfi",    "nfd",    "mh",     "fnfi",   "exact",  "afptas"};
  return names;
}

SolveOutput solve(const Instance& instance, const CostSpec& cost, const std::string& algorithm,
                  const SolveOptions& options) {
  const CostFunction f = make_cost(cost, instance.size());
  SolveOutput out;
  Solution& s = out.solution;
  s.instance_digest = instance_digest(instance);
  s.algorithm = algorithm;
  s.cost_spec = cost.text;
  const auto inc = ItemOrder::kIncreasing;
  const auto dec = ItemOrder::kDecreasing;
  if (algorithm == "nf-inc" || algorithm == "nfi") {
    s.packing = next_fit(instance, inc);
  } else if (algorithm == "nf-dec" || algorithm == "nfd") {
    s.packing = next_fit(instance, dec);
  } else if (algorithm == "ff-inc") {
    s.packing = first_fit(instance, inc);
  } else if (algorithm == "ff-dec") {
    s.packing = first_fit(instance, dec);
  } else if (algorithm == "bf-inc") {
    s.packing = best_fit(instance, inc);
  } else if (algorithm == "bf-dec") {
    s.packing = best_fit(instance, dec);
  } else if (algorithm == "mh") {
    s.packing = match_half(instance);
  } else if (algorithm == "fnfi") {
    s.kind = SolutionKind::kFractional;
    s.fractional = fnfi(instance, f);
  } else if (algorithm == "exact") {
    s.packing = exact_opt(instance, f, options.exact_limit).packing;
  } else if (algorithm == "afptas") {
    AfptasResult r = run_afptas(instance, f, options.eps.value_or(Epsilon(3)), options.afptas);
    s.packing = std::move(r.packing);
    out.report = std::move(r.report);
  } else {
    throw InvalidInput("unknown algorithm '" + algorithm + "'");
  }
  s.cost = s.kind == SolutionKind::kIntegral ? eval_cost(f, s.packing)
                                             : eval_fractional_cost(f, s.fractional);
  return out;
}

VerifyOutcome verify_solution(const Instance& instance, const Solution& solution,
                              const CostSpec& cost) {
  VerifyOutcome out;
  const std::string digest = instance_digest(instance);
  if (solution.instance_digest != digest) {
    out.problems.push_back("instance digest " + solution.instance_digest +
                           " does not match the instance (" + digest + ")");
  }
  const CostFunction f = make_cost(cost, instance.size());
  const Verdict verdict = solution.kind == SolutionKind::kIntegral
                              ? verify_packing(instance, solution.packing)
                              : verify_packing(instance, solution.fractional);
  for (const auto& v : verdict.violations) {
    std::string msg = to_string(v.kind);
    if (v.bin) msg += " bin " + std::to_string(*v.bin);
    if (v.item) msg += " item " + std::to_string(*v.item);
    out.problems.push_back(msg + ": " + v.detail);
  }
  out.recomputed_cost = solution.kind == SolutionKind::kIntegral
                            ? eval_cost(f, solution.packing)
                            : eval_fractional_cost(f, solution.fractional);
  const double tol = kCostTolerance * std::max(1.0, std::abs(out.recomputed_cost));
  if (std::abs(out.recomputed_cost - solution.cost) > tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "claimed cost " << solution.cost << " differs from recomputed cost "
        << out.recomputed_cost;
    out.problems.push_back(msg.str());
  }
  out.ok = out.problems.empty();
  return out;
}

Instance generate_instance(const std::string& family, const GeneratorParams& params,
                           std::uint64_t seed) {
  if (family == "sec2_single_large" || family == "sec2_many_large") {
    const long K = long_param(params, "K");
    if (K < 2) throw InvalidInput("K must be >= 2");
    const long large = family == "sec2_single_large" ? 1 : K;
    const long small = family == "sec2_single_large" ? 2 * K : K * K;
    std::vector<Rational> sizes(static_cast<std::size_t>(large), make_rational(K - 1, K));
    sizes.insert(sizes.end(), static_cast<std::size_t>(small), make_rational(1, K * K));
    return Instance(std::move(sizes));
  }
  if (family == "mh_tight") {
    const long N = long_param(params, "N");
    const long K = long_param(params, "K");
    if (N < 0 || K < 2) throw InvalidInput("mh_tight needs N >= 0 and K >= 2");
    std::vector<Rational> sizes(static_cast<std::size_t>(N), make_rational(K + 1, 2 * K));
    sizes.insert(sizes.end(), static_cast<std::size_t>(N * (K - 1)), make_rational(1, 2 * K));
    return Instance(std::move(sizes));
  }
  if (family == "uniform_random" || family == "clustered_random") {
    return random_instance(family, params, seed);
  }
  throw InvalidInput("unknown generator family '" + family + "'");
}

std::vector<CompareRow> compare(const std::vector<std::pair<std::string, Instance>>& instances,
                                const std::vector<std::string>& algorithms,
                                const std::vector<CostSpec>& costs,
                                const CompareOptions& options) {
  std::vector<CompareRow> rows;
  for (const auto& [name, instance] : instances) {
    for (const auto& spec : costs) {
      std::string ref_kind = "none";
      std::optional<double> ref;
      try {
        const CostFunction f = make_cost(spec, instance.size());
        if (instance.size() <= options.exact_limit) {
          ref = exact_opt(instance, f, options.exact_limit).cost;
          ref_kind = "exact";
        } else {
          ref = ratio_reference(instance, spec, f);
          ref_kind = "lower_bound";
        }
      } catch (const std::exception&) {
        ref_kind = "none";
      }
      for (const auto& alg : algorithms) {
        CompareRow row;
        row.instance = name;
        row.algorithm = alg;
        row.cost_spec = spec.text;
        row.reference_kind = ref_kind;
        row.reference = ref;
        const auto start = std::chrono::steady_clock::now();
        try {
          const SolveOutput out = solve(instance, spec, alg, options.solve);
          row.cost = out.solution.cost;
          row.bins = out.solution.kind == SolutionKind::kIntegral
                         ? out.solution.packing.bin_count()
                         : out.solution.fractional.bins.size();
          if (ref && *ref > 0) row.ratio = *row.cost / *ref;
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string compare_to_csv(const std::vector<CompareRow>& rows) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  auto num = [](std::optional<double> v) {
    if (!v) return std::string();
    std::ostringstream o;
    o.precision(12);
    o << *v;
    return o.str();
  };
  std::string out = "instance,algorithm,cost_spec,cost,bins,reference_kind,reference,ratio,seconds,error\n";
  for (const auto& r : rows) {
    out += quote(r.instance) + "," + r.algorithm + "," + quote(r.cost_spec) + "," + num(r.cost) +
           "," + std::to_string(r.bins) + "," + r.reference_kind + "," + num(r.reference) + "," +
           num(r.ratio) + "," + num(r.seconds) + "," + quote(r.error) + "\n";
  }
  return out;
}

std::string compare_to_json(const std::vector<CompareRow>& rows) {
  json j;
  j["rows"] = json::array();
  struct Agg {
    std::size_t count = 0;
    double sum = 0.0;
    double max = 0.0;
    std::size_t failures = 0;
  };
  std::map<std::pair<std::string, std::string>, Agg> agg;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& r : rows) {
    json row = {{"instance", r.instance},       {"algorithm", r.algorithm},
                {"cost_spec", r.cost_spec},     {"bins", r.bins},
                {"reference_kind", r.reference_kind}, {"seconds", r.seconds}};
    row["cost"] = r.cost ? json(*r.cost) : json(nullptr);
    row["reference"] = r.reference ? json(*r.reference) : json(nullptr);
    row["ratio"] = r.ratio ? json(*r.ratio) : json(nullptr);
    if (!r.error.empty()) row["error"] = r.error;
    j["rows"].push_back(row);
    const auto key = std::make_pair(r.algorithm, r.cost_spec);
    if (!agg.count(key)) order.push_back(key);
    Agg& a = agg[key];
    if (!r.error.empty()) ++a.failures;
    if (r.ratio) {
      ++a.count;
      a.sum += *r.ratio;
      a.max = std::max(a.max, *r.ratio);
    }
  }
  j["aggregates"] = json::array();
  for (const auto& key : order) {
    const Agg& a = agg[key];
    json entry = {{"algorithm", key.first}, {"cost_spec", key.second},
                  {"rows_with_ratio", a.count}, {"failures", a.failures}};
    entry["mean_ratio"] = a.count ? json(a.sum / static_cast<double>(a.count)) : json(nullptr);
    entry["max_ratio"] = a.count ? json(a.max) : json(nullptr);
    j["aggregates"].push_back(entry);
  }
  return j.dump(2) + "\n";
}

}  // namespace gcbp
