/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The mcsched authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MCSCHED_MCSCHED_H
#define MCSCHED_MCSCHED_H

/* C interface to the multicast scheduling simulator.
 *
 * Every call returns an mcs_status; on failure mcs_last_error() holds a
 * message for the calling thread until its next failing call. Handles are
 * opaque and owned by the caller, who releases them with the matching
 * *_destroy function. Output pointers are left untouched on failure. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MCSCHED_BUILDING)
#    define MCS_API __declspec(dllexport)
#  else
#    define MCS_API __declspec(dllimport)
#  endif
#else
#  define MCS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mcs_status {
  MCS_OK = 0,
  MCS_INVALID_ARGUMENT = 1,
  MCS_OUT_OF_DOMAIN = 2,
  MCS_UNSUPPORTED = 3,
  MCS_INVALID_STATE = 4,
  MCS_PARSE_ERROR = 5,
  MCS_IO_ERROR = 6,
  MCS_INTERNAL_ERROR = 7
} mcs_status;

typedef struct mcs_experiment mcs_experiment;
typedef struct mcs_results mcs_results;

MCS_API const char* mcs_last_error(void);
MCS_API const char* mcs_status_name(mcs_status status);
MCS_API const char* mcs_version(void);

/* Experiments: one config (plus optional sweep) or a named recipe. */
MCS_API mcs_status mcs_experiment_create(mcs_experiment** out);
MCS_API mcs_status mcs_experiment_parse(const char* text, mcs_experiment** out);
MCS_API mcs_status mcs_experiment_load_file(const char* path, mcs_experiment** out);
MCS_API mcs_status mcs_experiment_from_recipe(const char* name, mcs_experiment** out);
MCS_API void mcs_experiment_destroy(mcs_experiment* experiment);

/* Same keys as the experiment file format ("n-users", "sweep", "out", ...). */
MCS_API mcs_status mcs_experiment_set(mcs_experiment* experiment, const char* key,
                                      const char* value);
/* Re-checks every config and sweep point. */
MCS_API mcs_status mcs_experiment_validate(const mcs_experiment* experiment);
/* Empty string when no output path was set. Valid until the next set call. */
MCS_API const char* mcs_experiment_out_path(const mcs_experiment* experiment);

/* NUL-separated, double-NUL-terminated list of names. */
MCS_API const char* mcs_setting_keys(void);
MCS_API const char* mcs_recipe_names(void);

/* threads = 0 uses every hardware thread; results do not depend on it. */
MCS_API mcs_status mcs_run(const mcs_experiment* experiment, unsigned threads,
                           mcs_results** out);
MCS_API void mcs_results_destroy(mcs_results* results);
MCS_API size_t mcs_results_count(const mcs_results* results);

typedef struct mcs_record {
  char scheme[32];
  unsigned n_users;
  unsigned groups;
  unsigned alpha; /* 0 for schemes without alpha */
  unsigned antennas;
  double power;
  double packet_nats;
  uint64_t iterations;
  uint64_t seed;
  /* has_* flags are 1 when the matching value is present. */
  int has_throughput;
  double throughput_mean, throughput_se;
  int has_delay;
  double delay_mean, delay_se;
  int has_analytic_throughput;
  double analytic_throughput;
  int has_predicted_scaling;
  double predicted_scaling;
} mcs_record;

MCS_API mcs_status mcs_results_get(const mcs_results* results, size_t index, mcs_record* out);
MCS_API mcs_status mcs_results_write_csv(const mcs_results* results, const char* path);
/* CSV text owned by the results handle. */
MCS_API const char* mcs_results_csv(const mcs_results* results);

/* Reads CSV files written by mcs_results_write_csv and writes one series
 * file per (scheme, split, metric) into out_dir. `on_file` (may be NULL)
 * receives each written path. */
typedef void (*mcs_file_callback)(const char* path, void* user);
MCS_API mcs_status mcs_plotdata(const char* const* csv_paths, size_t count, const char* out_dir,
                                mcs_file_callback on_file, void* user);

/* Runs the verification checks whose names contain `filter` (NULL or "" for
 * all). `on_check` is called once per check. *all_passed is 1 iff every
 * selected check passed. */
typedef void (*mcs_check_callback)(const char* name, int passed, const char* detail,
                                   double seconds, void* user);
MCS_API mcs_status mcs_verify(const char* filter, unsigned threads, mcs_check_callback on_check,
                              void* user, int* all_passed);

/* Analytic entry points. */
MCS_API mcs_status mcs_expint_ei(double x, double* out);
MCS_API mcs_status mcs_static_throughput(unsigned n_users, unsigned alpha, double power,
                                         double* out);
MCS_API mcs_status mcs_static_throughput_quadrature(unsigned n_users, unsigned alpha,
                                                    double power, unsigned groups,
                                                    unsigned antennas, double* out);
MCS_API mcs_status mcs_coupon_expected_trials(double queues, unsigned alpha, unsigned services,
                                              double* out);
MCS_API mcs_status mcs_service_time_pmf(double mu, double capacity, uint64_t k, double* out);

#ifdef __cplusplus
}
#endif

#endif /* MCSCHED_MCSCHED_H */
