// Copyright 2026 The levelcfp Authors
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


/* C interface to levelcfp. Objects are opaque handles released with the
 * matching *_free function. Every function returning lcfp_status leaves a
 * message for lcfp_last_error() on failure; the message is per thread. */

#ifndef LEVELCFP_C_H_
#define LEVELCFP_C_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LCFP_API __declspec(dllexport)
#else
#define LCFP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  LCFP_OK = 0,
  LCFP_ERR_INVALID_ARGUMENT = 1,
  LCFP_ERR_DIMENSION = 2,
  LCFP_ERR_NUMERICAL = 3,
  LCFP_ERR_PARSE = 4,
  LCFP_ERR_IO = 5,
  LCFP_ERR_NULL_POINTER = 6,
  LCFP_ERR_INTERNAL = 7
} lcfp_status;

typedef enum {
  LCFP_CASE1 = 1,
  LCFP_CASE2_OR_3 = 2,
  LCFP_ITERATION_CAP = 3
} lcfp_termination;

typedef struct lcfp_problem lcfp_problem;
typedef struct lcfp_options lcfp_options;
typedef struct lcfp_report lcfp_report;
typedef struct lcfp_bench lcfp_bench;
typedef struct lcfp_counterexample lcfp_counterexample;

LCFP_API const char* lcfp_version(void);
LCFP_API const char* lcfp_last_error(void);
LCFP_API const char* lcfp_status_name(lcfp_status status);

/* Problems. */
LCFP_API lcfp_status lcfp_problem_from_qps_file(const char* path,
                                                lcfp_problem** out);
LCFP_API lcfp_status lcfp_problem_from_qps_text(const char* text,
                                                lcfp_problem** out);
LCFP_API lcfp_status lcfp_problem_builtin(const char* name, uint64_t seed,
                                          lcfp_problem** out);
LCFP_API size_t lcfp_builtin_count(void);
LCFP_API const char* lcfp_builtin_name(size_t index);
LCFP_API lcfp_status lcfp_problem_set_optimum(lcfp_problem* problem,
                                              double fstar);
/* Looks the problem name up in a "name value" file; *found is 0 or 1. */
LCFP_API lcfp_status lcfp_problem_set_optimum_from_file(lcfp_problem* problem,
                                                        const char* path,
                                                        int* found);
LCFP_API const char* lcfp_problem_name(const lcfp_problem* problem);
LCFP_API size_t lcfp_problem_dimension(const lcfp_problem* problem);
/* Writes QPS text into buffer (NUL terminated) when it fits; *needed gets
 * the full length including the terminator. */
LCFP_API lcfp_status lcfp_problem_write_qps(const lcfp_problem* problem,
                                            char* buffer, size_t capacity,
                                            size_t* needed);
LCFP_API void lcfp_problem_free(lcfp_problem* problem);

/* Run options. Numeric keys: max_sweeps, gamma, lambda, epsilon_factor,
 * epsilon_floor, block, accel_c, accel_s, sup_n, sup_a, feas_tol,
 * max_outer, bisection_lower. */
LCFP_API lcfp_status lcfp_options_create(lcfp_options** out);
LCFP_API lcfp_status lcfp_options_set(lcfp_options* options, const char* key,
                                      double value);
/* "max-floor", "mult" or "const". */
LCFP_API lcfp_status lcfp_options_set_epsilon_rule(lcfp_options* options,
                                                   const char* rule);
LCFP_API lcfp_status lcfp_options_set_adaptive(lcfp_options* options,
                                               int adaptive);
LCFP_API void lcfp_options_free(lcfp_options* options);

/* Variants. */
LCFP_API size_t lcfp_variant_count(void);
LCFP_API const char* lcfp_variant_name(size_t index);
LCFP_API lcfp_status lcfp_variant_valid(const char* variant,
                                        const lcfp_problem* problem,
                                        int* valid);

/* Single runs. options may be NULL for defaults. */
LCFP_API lcfp_status lcfp_solve(const lcfp_problem* problem,
                                const char* variant,
                                const lcfp_options* options,
                                lcfp_report** out);
LCFP_API lcfp_termination lcfp_report_termination(const lcfp_report* report);
LCFP_API const char* lcfp_report_status(const lcfp_report* report);
LCFP_API const char* lcfp_report_variant(const lcfp_report* report);
LCFP_API const char* lcfp_report_problem(const lcfp_report* report);
LCFP_API double lcfp_report_best_value(const lcfp_report* report);
/* Returns 1 and sets *q when a quality score is available. */
LCFP_API int lcfp_report_quality(const lcfp_report* report, double* q);
LCFP_API double lcfp_report_epsilon(const lcfp_report* report);
LCFP_API uint64_t lcfp_report_projections(const lcfp_report* report);
LCFP_API uint64_t lcfp_report_objective_evaluations(const lcfp_report* report);
LCFP_API uint64_t lcfp_report_outer_steps(const lcfp_report* report);
LCFP_API uint64_t lcfp_report_sweeps(const lcfp_report* report);
LCFP_API double lcfp_report_wall_ms(const lcfp_report* report);
LCFP_API size_t lcfp_report_dimension(const lcfp_report* report);
LCFP_API lcfp_status lcfp_report_point(const lcfp_report* report,
                                       double* x, size_t length);
LCFP_API size_t lcfp_report_trace_size(const lcfp_report* report);
LCFP_API lcfp_status lcfp_report_trace_point(const lcfp_report* report,
                                             size_t index, size_t* step,
                                             double* level, double* value);
/* runs.csv, summary.csv, report_meta.json and trace.csv in dir. */
LCFP_API lcfp_status lcfp_report_write(const lcfp_report* report,
                                       const char* dir);
LCFP_API void lcfp_report_free(lcfp_report* report);

/* Benchmarks over the *.qps files of a directory (optima from optima.txt).
 * variants is "all" or a comma separated list. */
LCFP_API lcfp_status lcfp_bench_run(const char* problem_dir,
                                    const char* variants,
                                    const lcfp_options* options,
                                    lcfp_bench** out);
LCFP_API size_t lcfp_bench_size(const lcfp_bench* bench);
/* Borrowed; valid until lcfp_bench_free. */
LCFP_API const lcfp_report* lcfp_bench_report(const lcfp_bench* bench,
                                              size_t index);
LCFP_API size_t lcfp_bench_skipped_count(const lcfp_bench* bench);
LCFP_API const char* lcfp_bench_skipped(const lcfp_bench* bench,
                                        size_t index);
LCFP_API lcfp_status lcfp_bench_write(const lcfp_bench* bench,
                                      const char* dir);
LCFP_API void lcfp_bench_free(lcfp_bench* bench);

/* f(x) = x^2 - 100 counterexample with an exact level oracle. */
LCFP_API lcfp_status lcfp_counterexample_run(size_t last_step,
                                             lcfp_counterexample** out);
LCFP_API size_t lcfp_counterexample_size(const lcfp_counterexample* ce);
LCFP_API lcfp_status lcfp_counterexample_step(const lcfp_counterexample* ce,
                                              size_t k, double* x,
                                              double* value, double* epsilon,
                                              double* level,
                                              double* recursion);
LCFP_API lcfp_status lcfp_counterexample_checks(
    const lcfp_counterexample* ce, int* levels_nonnegative,
    int* gap_exceeds_100, int* tail_sum_bounded, double* tail_sum);
LCFP_API void lcfp_counterexample_free(lcfp_counterexample* ce);

#ifdef __cplusplus
}
#endif

#endif /* LEVELCFP_C_H_ */
