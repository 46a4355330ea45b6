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

/* C interface to the gcbp library. All handles are opaque. Functions that
 * can fail return a gcbp_status; on failure gcbp_last_error() describes the
 * problem (per thread). Strings returned through char** are owned by the
 * caller and released with gcbp_string_free(). */

#ifndef GCBP_GCBP_H_
#define GCBP_GCBP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(GCBP_BUILDING_LIBRARY)
#define GCBP_API __declspec(dllexport)
#else
#define GCBP_API __declspec(dllimport)
#endif
#else
#define GCBP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gcbp_status {
  GCBP_OK = 0,
  GCBP_ERR_INVALID_INPUT = 2,  /* malformed input or argument */
  GCBP_ERR_INFEASIBLE = 3,     /* verification failed */
  GCBP_ERR_LIMIT = 4,          /* a solver limit was exceeded */
  GCBP_ERR_INTERNAL = 5        /* numerical or unexpected failure */
} gcbp_status;

typedef struct gcbp_instance gcbp_instance;
typedef struct gcbp_solution gcbp_solution;

typedef struct gcbp_solve_options {
  const char* eps;          /* "1/k" with k >= 3; NULL selects 1/3 */
  long h_override;          /* <= 0 keeps the computed split threshold */
  const char* lp_dump_path; /* NULL: no LP dump */
  size_t exact_limit;       /* 0 selects 15 */
} gcbp_solve_options;

GCBP_API const char* gcbp_version(void);
GCBP_API const char* gcbp_last_error(void);
/* Comma-separated algorithm names accepted by gcbp_solve. */
GCBP_API const char* gcbp_algorithms(void);
GCBP_API void gcbp_string_free(char* s);

GCBP_API gcbp_status gcbp_instance_from_json(const char* text, gcbp_instance** out);
GCBP_API gcbp_status gcbp_instance_from_sizes(const char* const* sizes, size_t count,
                                              gcbp_instance** out);
/* params: "key=value" pairs separated by commas, e.g. "N=8,K=2". */
GCBP_API gcbp_status gcbp_instance_generate(const char* family, const char* params,
                                            uint64_t seed, gcbp_instance** out);
GCBP_API void gcbp_instance_free(gcbp_instance* instance);
GCBP_API size_t gcbp_instance_size(const gcbp_instance* instance);
GCBP_API gcbp_status gcbp_instance_to_json(const gcbp_instance* instance, char** out);
GCBP_API gcbp_status gcbp_instance_digest(const gcbp_instance* instance, char** out);

/* options may be NULL. */
GCBP_API gcbp_status gcbp_solve(const gcbp_instance* instance, const char* cost_spec,
                                const char* algorithm, const gcbp_solve_options* options,
                                gcbp_solution** out);
GCBP_API gcbp_status gcbp_solution_from_json(const char* text, gcbp_solution** out);
GCBP_API void gcbp_solution_free(gcbp_solution* solution);
GCBP_API double gcbp_solution_cost(const gcbp_solution* solution);
GCBP_API size_t gcbp_solution_bin_count(const gcbp_solution* solution);
GCBP_API gcbp_status gcbp_solution_to_json(const gcbp_solution* solution, char** out);
/* Stage report of an afptas run; GCBP_ERR_INVALID_INPUT for other solutions. */
GCBP_API gcbp_status gcbp_solution_report_json(const gcbp_solution* solution, char** out);

/* GCBP_OK when the solution is valid and its cost matches; otherwise
 * GCBP_ERR_INFEASIBLE with one problem per line in *problems. Either output
 * pointer may be NULL. */
GCBP_API gcbp_status gcbp_verify(const gcbp_instance* instance, const gcbp_solution* solution,
                                 const char* cost_spec, double* recomputed_cost,
                                 char** problems);

/* algorithms: comma-separated; cost_specs: semicolon-separated; format:
 * "csv" or "json". names may be NULL (instances are then numbered). */
GCBP_API gcbp_status gcbp_compare(const gcbp_instance* const* instances, const char* const* names,
                                  size_t count, const char* algorithms, const char* cost_specs,
                                  const char* format, size_t exact_limit, char** out);

#ifdef __cplusplus
}
#endif

#endif /* GCBP_GCBP_H_ */
