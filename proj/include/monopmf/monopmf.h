/* Copyright 2026 The monopmf Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
/* monopmf.h - C interface to the monotone pmf estimation library.
 *
 * Estimators of a non-increasing probability mass function on {0, ..., K}:
 * the empirical proportions, their monotone rearrangement, and the Grenander
 * estimator (slopes of the least concave majorant of the empirical CDF).
 * Also exposes the Gaussian limit process, closed-form asymptotic
 * efficiencies and a seeded Monte Carlo harness.
 *
 * Conventions:
 *  - Every fallible call returns a monopmf_status. On failure a one-line
 *    message is available from monopmf_last_error() on the calling thread.
 *  - Objects are opaque handles created by *_create / *_read / ... and
 *    released with the matching *_free. Freeing NULL is a no-op.
 *  - Array outputs use (buffer, capacity, *length) triples: *length always
 *    receives the required size; MONOPMF_E_BUFFER is returned when capacity
 *    is too small (pass capacity 0 to query).
 */
#ifndef MONOPMF_MONOPMF_H
#define MONOPMF_MONOPMF_H

#include <stddef.h>
#include <stdint.h>

#if defined(MONOPMF_BUILDING_LIBRARY)
#  define MONOPMF_API __attribute__((visibility("default")))
#else
#  define MONOPMF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum monopmf_status {
  MONOPMF_OK = 0,
  MONOPMF_E_INVALID_ARGUMENT = 1, /* NULL pointer or unknown enum value */
  MONOPMF_E_DOMAIN = 2,           /* precondition or invariant violated */
  MONOPMF_E_PARSE = 3,            /* malformed text (files, specs, metric names) */
  MONOPMF_E_IO = 4,               /* file could not be read or written */
  MONOPMF_E_BUFFER = 5,           /* output buffer too small */
  MONOPMF_E_INTERNAL = 6
} monopmf_status;

typedef enum monopmf_estimator {
  MONOPMF_EMPIRICAL = 0,
  MONOPMF_REARRANGEMENT = 1,
  MONOPMF_GRENANDER = 2
} monopmf_estimator;

typedef enum monopmf_target { MONOPMF_TARGET_PMF = 0, MONOPMF_TARGET_MIXING = 1 } monopmf_target;

typedef struct monopmf_pmf monopmf_pmf;
typedef struct monopmf_counts monopmf_counts;
typedef struct monopmf_summary monopmf_summary;

MONOPMF_API const char* monopmf_version(void);
MONOPMF_API const char* monopmf_last_error(void);
MONOPMF_API const char* monopmf_status_string(monopmf_status status);

/* ---- pmfs ------------------------------------------------------------- */

MONOPMF_API monopmf_status monopmf_pmf_uniform(size_t y, monopmf_pmf** out);
MONOPMF_API monopmf_status monopmf_pmf_geometric(double theta, double tail_tol, monopmf_pmf** out);
MONOPMF_API monopmf_status monopmf_pmf_mixture(const double* weights, const size_t* ys, size_t len,
                                               monopmf_pmf** out);
/* "uniform:5", "geometric:0.75", "mixture:0.2:3,0.8:7", "values:0.5,0.3,0.2" */
MONOPMF_API monopmf_status monopmf_pmf_from_spec(const char* spec, monopmf_pmf** out);
/* monotone != 0 also enforces non-increasing values and p_x <= 1/(x+1). */
MONOPMF_API monopmf_status monopmf_pmf_from_values(const double* probs, size_t len, int monotone,
                                                   monopmf_pmf** out);
MONOPMF_API monopmf_status monopmf_pmf_read(const char* path, int monotone, monopmf_pmf** out);
MONOPMF_API monopmf_status monopmf_pmf_write(const monopmf_pmf* p, const char* path);
MONOPMF_API size_t monopmf_pmf_size(const monopmf_pmf* p);
MONOPMF_API int monopmf_pmf_is_monotone(const monopmf_pmf* p);
MONOPMF_API monopmf_status monopmf_pmf_values(const monopmf_pmf* p, double* out, size_t capacity,
                                              size_t* length);
MONOPMF_API void monopmf_pmf_free(monopmf_pmf* p);

/* Plain sequences in the pmf file layout ("x<TAB>value", 17 significant
 * digits), without pmf validation. Used for estimates and mixing weights. */
MONOPMF_API monopmf_status monopmf_sequence_write(const double* values, size_t len, const char* path);
MONOPMF_API monopmf_status monopmf_sequence_read(const char* path, double* out, size_t capacity, size_t* length);

/* ---- counts ----------------------------------------------------------- */

MONOPMF_API monopmf_status monopmf_counts_from_values(const uint64_t* counts, size_t len,
                                                      monopmf_counts** out);
MONOPMF_API monopmf_status monopmf_counts_read(const char* path, monopmf_counts** out);
MONOPMF_API monopmf_status monopmf_counts_write(const monopmf_counts* c, const char* path);
/* n i.i.d. draws; identical (p, n, seed) give identical counts everywhere. */
MONOPMF_API monopmf_status monopmf_sample(const monopmf_pmf* p, uint64_t n, uint64_t seed,
                                          monopmf_counts** out);
MONOPMF_API size_t monopmf_counts_size(const monopmf_counts* c);
MONOPMF_API uint64_t monopmf_counts_total(const monopmf_counts* c);
MONOPMF_API monopmf_status monopmf_counts_values(const monopmf_counts* c, uint64_t* out, size_t capacity,
                                                 size_t* length);
MONOPMF_API void monopmf_counts_free(monopmf_counts* c);

/* ---- estimators --------------------------------------------------------- */

/* Estimate on {0, ..., max observed}; length equals monopmf_counts_size. */
MONOPMF_API monopmf_status monopmf_estimate(const monopmf_counts* c, monopmf_estimator est, double* out,
                                            size_t capacity, size_t* length);
/* Sequence operators; out must hold len values. */
MONOPMF_API monopmf_status monopmf_rear(const double* w, size_t len, double* out);
MONOPMF_API monopmf_status monopmf_gren(const double* w, size_t len, double* out);
/* q_x = -(x+1)(p_{x+1} - p_x), p_{len} = 0; out must hold len values. */
MONOPMF_API monopmf_status monopmf_mixing(const double* p, size_t len, double* out);

/* Maximal constancy blocks of a non-increasing pmf as [first[i], last[i]]. */
MONOPMF_API monopmf_status monopmf_constancy_blocks(const monopmf_pmf* p, size_t* first, size_t* last,
                                                    size_t capacity, size_t* count);

/* ---- metrics ----------------------------------------------------------- */

/* metric: "hellinger", "l1", "l2", "linf" or "l<k>" for real k >= 1.
 * The shorter sequence is zero-padded. */
MONOPMF_API monopmf_status monopmf_distance(const double* a, size_t len_a, const double* b, size_t len_b,
                                            const char* metric, double* out);

/* ---- limit process ----------------------------------------------------- */

typedef struct monopmf_asymptotics {
  double e_sq_l2_emp;
  double e_sq_l2_gren;
  double e_hell_emp;
  double e_hell_gren;
  double e_l1_emp;
  size_t kappa;
  size_t block_count;
} monopmf_asymptotics;

MONOPMF_API monopmf_status monopmf_asymptotics_compute(const monopmf_pmf* p, monopmf_asymptotics* out);

/* One draw of (Y, Y^R, Y^G); each buffer holds monopmf_pmf_size(p) values. */
MONOPMF_API monopmf_status monopmf_draw_limit(const monopmf_pmf* p, uint64_t seed, double* y, double* y_rear,
                                              double* y_gren);

/* Writes draws to per_draw_csv (draw,x,y,y_rear,y_gren) and per-coordinate
 * aggregates to aggregate_csv. Either path may be NULL. */
MONOPMF_API monopmf_status monopmf_limits_write(const monopmf_pmf* p, uint64_t draws, uint64_t seed,
                                                const char* per_draw_csv, const char* aggregate_csv);

MONOPMF_API monopmf_status monopmf_touch_count(const double* z, size_t len, size_t* out);
MONOPMF_API monopmf_status monopmf_gren_zero_probability(size_t y, uint64_t reps, uint64_t seed, double* out);
MONOPMF_API monopmf_status monopmf_sparre_andersen(size_t k, double* touches, double* interior_vertices);

/* ---- Monte Carlo harness ------------------------------------------------ */

typedef struct monopmf_experiment_config {
  const monopmf_pmf* truth;
  const char* truth_label;          /* echoed into metadata; may be NULL */
  uint64_t n;
  uint64_t reps;
  uint64_t seed;
  const monopmf_estimator* estimators;
  size_t estimator_count;
  const char* metrics;              /* comma-separated metric names */
  monopmf_target target;
  const monopmf_counts* first_replicate_counts; /* optional override for replicate 0 */
  unsigned threads;                 /* 0 = hardware concurrency */
} monopmf_experiment_config;

typedef struct monopmf_distance_stats {
  double mean, sd, min, q1, median, q3, max;
} monopmf_distance_stats;

typedef struct monopmf_run_counters {
  uint64_t monotone_replicates;
  uint64_t inequality_violations;
  uint64_t coincidence_violations;
  uint64_t invalid_mixing_rows;
} monopmf_run_counters;

MONOPMF_API monopmf_status monopmf_run_experiment(const monopmf_experiment_config* cfg, monopmf_summary** out);
MONOPMF_API monopmf_status monopmf_summary_stats(const monopmf_summary* s, size_t estimator_index,
                                                 size_t metric_index, monopmf_distance_stats* out);
MONOPMF_API monopmf_status monopmf_summary_value(const monopmf_summary* s, uint64_t replicate,
                                                 size_t estimator_index, size_t metric_index, double* out);
MONOPMF_API monopmf_status monopmf_summary_counters(const monopmf_summary* s, monopmf_run_counters* out);
MONOPMF_API monopmf_status monopmf_summary_write_raw_csv(const monopmf_summary* s, const char* path);
MONOPMF_API monopmf_status monopmf_summary_write_csv(const monopmf_summary* s, const char* path);
MONOPMF_API monopmf_status monopmf_summary_write_metadata(const monopmf_summary* s, const char* path);
MONOPMF_API void monopmf_summary_free(monopmf_summary* s);

/* k may be INFINITY for the sup-norm loss. */
MONOPMF_API monopmf_status monopmf_estimate_risk(const monopmf_pmf* truth, uint64_t n, double k,
                                                 monopmf_estimator est, uint64_t reps, uint64_t seed,
                                                 double* mean, double* standard_error);

/* Sorted sqrt(n)(p~_x - p_x) over reps replicates; out holds reps values. */
MONOPMF_API monopmf_status monopmf_fluctuations(const monopmf_pmf* truth, size_t x, uint64_t n, uint64_t reps,
                                                uint64_t seed, monopmf_estimator est, double* out);

#ifdef __cplusplus
}
#endif

#endif /* MONOPMF_MONOPMF_H */
