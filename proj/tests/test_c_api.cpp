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

// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdio>
#include <cstring>
#include <string>

#include "doctest.h"
#include "gcbp/gcbp.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  gcbp_string_free(s);
  return out;
}

}  // namespace

TEST_SUITE("c_api") {

TEST_CASE("version and algorithms") {
  CHECK(std::string(gcbp_version()) == "0.1.0");
  const std::string algs = gcbp_algorithms();
  CHECK(algs.find("afptas") != std::string::npos);
  CHECK(algs.find("nfi") != std::string::npos);
}

TEST_CASE("instances") {
  const char* sizes[] = {"1/3", "1/2", "1/4"};
  gcbp_instance* inst = nullptr;
  REQUIRE(gcbp_instance_from_sizes(sizes, 3, &inst) == GCBP_OK);
  CHECK(gcbp_instance_size(inst) == 3);
  char* json = nullptr;
  REQUIRE(gcbp_instance_to_json(inst, &json) == GCBP_OK);
  const std::string text = take(json);
  CHECK(text.find("\"1/2\"") < text.find("\"1/3\""));
  gcbp_instance* again = nullptr;
  REQUIRE(gcbp_instance_from_json(text.c_str(), &again) == GCBP_OK);
  char* d1 = nullptr;
  char* d2 = nullptr;
  REQUIRE(gcbp_instance_digest(inst, &d1) == GCBP_OK);
  REQUIRE(gcbp_instance_digest(again, &d2) == GCBP_OK);
  CHECK(take(d1) == take(d2));
  gcbp_instance_free(again);
  gcbp_instance_free(inst);
}

TEST_CASE("errors carry codes and messages") {
  gcbp_instance* inst = nullptr;
  CHECK(gcbp_instance_from_json("{", &inst) == GCBP_ERR_INVALID_INPUT);
  CHECK(inst == nullptr);
  CHECK(std::strlen(gcbp_last_error()) > 0);
  const char* bad[] = {"3/2"};
  CHECK(gcbp_instance_from_sizes(bad, 1, &inst) == GCBP_ERR_INVALID_INPUT);
  CHECK(gcbp_instance_from_sizes(nullptr, 1, &inst) == GCBP_ERR_INVALID_INPUT);
  CHECK(gcbp_instance_generate("nope", "", 0, &inst) == GCBP_ERR_INVALID_INPUT);
  CHECK(std::string(gcbp_last_error()).find("nope") != std::string::npos);

  REQUIRE(gcbp_instance_generate("uniform_random", "n=20", 1, &inst) == GCBP_OK);
  gcbp_solution* sol = nullptr;
  CHECK(gcbp_solve(inst, "fq:2", "exact", nullptr, &sol) == GCBP_ERR_LIMIT);
  CHECK(gcbp_solve(inst, "fq:0", "nfi", nullptr, &sol) == GCBP_ERR_INVALID_INPUT);
  CHECK(gcbp_solve(inst, "fq:2", "best", nullptr, &sol) == GCBP_ERR_INVALID_INPUT);
  gcbp_solve_options opts{"1/2", 0, nullptr, 0};
  CHECK(gcbp_solve(inst, "fq:2", "afptas", &opts, &sol) == GCBP_ERR_INVALID_INPUT);
  gcbp_solve_options low_h{"1/3", 2, nullptr, 0};
  CHECK(gcbp_solve(inst, "fq:2", "afptas", &low_h, &sol) == GCBP_ERR_INVALID_INPUT);
  CHECK(sol == nullptr);
  gcbp_instance_free(inst);
}

TEST_CASE("solve, serialize and verify") {
  gcbp_instance* inst = nullptr;
  REQUIRE(gcbp_instance_generate("sec2_single_large", "K=4", 0, &inst) == GCBP_OK);
  CHECK(gcbp_instance_size(inst) == 9);

  gcbp_solution* nfd = nullptr;
  REQUIRE(gcbp_solve(inst, "fq:1", "nfd", nullptr, &nfd) == GCBP_OK);
  CHECK(gcbp_solution_cost(nfd) == doctest::Approx(gcbp_solution_bin_count(nfd)));
  double cost = 0;
  char* problems = nullptr;
  CHECK(gcbp_verify(inst, nfd, "fq:1", &cost, &problems) == GCBP_OK);
  CHECK(take(problems).empty());
  CHECK(cost == doctest::Approx(gcbp_solution_cost(nfd)));
  char* report = nullptr;
  CHECK(gcbp_solution_report_json(nfd, &report) == GCBP_ERR_INVALID_INPUT);

  char* json = nullptr;
  REQUIRE(gcbp_solution_to_json(nfd, &json) == GCBP_OK);
  std::string text = take(json);
  gcbp_solution* parsed = nullptr;
  REQUIRE(gcbp_solution_from_json(text.c_str(), &parsed) == GCBP_OK);
  CHECK(gcbp_solution_cost(parsed) == gcbp_solution_cost(nfd));
  gcbp_solution_free(parsed);

  // Claim a lower cost than the packing has.
  const auto at = text.find("\"cost\":");
  REQUIRE(at != std::string::npos);
  text.replace(at, 7, "\"cost\":0.5,\"ignored\":");
  REQUIRE(gcbp_solution_from_json(text.c_str(), &parsed) == GCBP_OK);
  CHECK(gcbp_verify(inst, parsed, "fq:1", nullptr, &problems) == GCBP_ERR_INFEASIBLE);
  CHECK(take(problems).find("claimed cost") != std::string::npos);
  gcbp_solution_free(parsed);

  gcbp_solution* af = nullptr;
  gcbp_solve_options opts{"1/3", 3, nullptr, 0};
  REQUIRE(gcbp_solve(inst, "fq:2", "afptas", &opts, &af) == GCBP_OK);
  CHECK(gcbp_verify(inst, af, "fq:2", nullptr, nullptr) == GCBP_OK);
  REQUIRE(gcbp_solution_report_json(af, &report) == GCBP_OK);
  CHECK(take(report).find("\"stages\"") != std::string::npos);
  gcbp_solution_free(af);
  gcbp_solution_free(nfd);
  gcbp_instance_free(inst);
}

TEST_CASE("compare") {
  gcbp_instance* a = nullptr;
  gcbp_instance* b = nullptr;
  REQUIRE(gcbp_instance_generate("mh_tight", "N=2,K=2", 0, &a) == GCBP_OK);
  REQUIRE(gcbp_instance_generate("clustered_random", "n=20", 5, &b) == GCBP_OK);
  const gcbp_instance* list[] = {a, b};
  const char* names[] = {"tight", "clustered"};
  char* out = nullptr;
  REQUIRE(gcbp_compare(list, names, 2, "nfi,mh", "fq:1;fq:2", "csv", 0, &out) == GCBP_OK);
  const std::string csv = take(out);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
  CHECK(csv.find(R"("tight",mh,"fq:2")") != std::string::npos);
  REQUIRE(gcbp_compare(list, nullptr, 2, "nfi", "fq:1", "json", 0, &out) == GCBP_OK);
  CHECK(take(out).find("\"aggregates\"") != std::string::npos);
  CHECK(gcbp_compare(list, names, 2, "nfi", "fq:1", "xml", 0, &out) == GCBP_ERR_INVALID_INPUT);
  gcbp_instance_free(a);
  gcbp_instance_free(b);
}

}  // TEST_SUITE
