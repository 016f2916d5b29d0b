// Copyright 2026 The conicdist Authors
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

/* C interface to conicdist. Every call returns a cd_status; on failure the
 * message is available from cd_last_error() on the same thread. Strings
 * handed out by the library are released with cd_string_free(). */

#ifndef CONICDIST_CONICDIST_H_
#define CONICDIST_CONICDIST_H_

#include <stdint.h>

#if defined(_WIN32)
#  if defined(CONICDIST_BUILDING_LIBRARY)
#    define CD_API __declspec(dllexport)
#  else
#    define CD_API __declspec(dllimport)
#  endif
#else
#  define CD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cd_instance cd_instance;
typedef struct cd_report cd_report;

typedef enum cd_status {
  CD_OK = 0,
  CD_ERR_SCHEMA = 1,       /* malformed instance or report file */
  CD_ERR_CONFIG = 2,       /* dimension mismatch, bad option */
  CD_ERR_MODE = 3,         /* exact mode with non-polyhedral norms */
  CD_ERR_DOMAIN = 4,
  CD_ERR_INCONSISTENT = 5, /* stored residuals or alternatives disagree */
  CD_ERR_ARGUMENT = 6,     /* NULL pointer or unknown name */
  CD_ERR_INTERNAL = 7
} cd_status;

typedef enum cd_mode {
  CD_MODE_AUTO = -1, /* exact when every block norm is polyhedral */
  CD_MODE_EXACT = 0,
  CD_MODE_SAMPLED = 1
} cd_mode;

typedef struct cd_options {
  int mode;      /* a cd_mode value */
  double tol;    /* 1e-6 */
  int budget;    /* 10000 */
  uint64_t seed; /* 0 */
} cd_options;

CD_API const char* cd_version(void);
CD_API const char* cd_last_error(void);
CD_API void cd_string_free(char* s);
CD_API void cd_options_default(cd_options* options);

CD_API cd_status cd_instance_load_file(const char* path, cd_instance** out);
CD_API cd_status cd_instance_load_json(const char* json, cd_instance** out);
CD_API cd_status cd_instance_to_json(const cd_instance* instance, char** out);
CD_API void cd_instance_destroy(cd_instance* instance);

/* *surjective is 1 or 0. *json_out (optional) receives
 * {"surjective": ..., "witness": [...]} with the witness only when not
 * surjective. */
CD_API cd_status cd_check_surjective(const cd_instance* instance, int* surjective, char** json_out);

/* All four distance quantities with certificates. */
CD_API cd_status cd_compute_distance(const cd_instance* instance, const cd_options* options,
                                     cd_report** out);
/* As cd_compute_distance, plus the alternative-system checks. */
CD_API cd_status cd_verify(const cd_instance* instance, const cd_options* options, cd_report** out);

CD_API cd_status cd_report_to_json(const cd_report* report, int include_timings, char** out);
CD_API int cd_report_passed(const cd_report* report);
/* name is one of "general", "rank_one", "dual", "phi"; infinity is HUGE_VAL. */
CD_API cd_status cd_report_quantity(const cd_report* report, const char* name, double* value);
/* Failed checks and notes, one per line. */
CD_API cd_status cd_report_summary(const cd_report* report, char** out);
CD_API void cd_report_destroy(cd_report* report);

/* Compares a stored report against a fresh one. *matches is 1 when every
 * quantity agrees within the fresh report's tolerance; *table receives the
 * gap table. Stored residuals that do not reproduce give
 * CD_ERR_INCONSISTENT. */
CD_API cd_status cd_report_compare_json(const cd_report* fresh, const char* stored_json, int* matches,
                                        char** table);

#ifdef __cplusplus
}
#endif

#endif /* CONICDIST_CONICDIST_H_ */
