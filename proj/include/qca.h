// Copyright 2026 The QCA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the qca library. Every function returning qca_status sets
 * a thread-local message readable through qca_last_error() on failure.
 * Strings returned through char** are owned by the caller and released with
 * qca_string_free(). */

#ifndef QCA_H
#define QCA_H

#include <stdint.h>

#if defined(_WIN32)
#define QCA_API __declspec(dllexport)
#else
#define QCA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qca_status {
    QCA_OK = 0,
    QCA_USAGE = 1,        /* bad parameter, input word, range, or family */
    QCA_VALIDATION = 2,   /* machine fails validation */
    QCA_BUDGET = 3,       /* step budget exhausted; results are still returned */
    QCA_PARSE = 4,        /* malformed machine file or rational */
    QCA_IO = 5,
    QCA_SPEC = 6,         /* run left the transition table or the tape */
    QCA_STRUCTURE = 7,    /* dimension mismatch, unbounded branching */
    QCA_NONHALTING = 8,   /* no halting probability */
    QCA_INTERNAL = 9
} qca_status;

typedef struct qca_machine qca_machine;

QCA_API const char *qca_last_error(void);
QCA_API void qca_string_free(char *s);

/* Built-in machines. exponent_from_zero makes a^1 a member of UPOWER. */
QCA_API qca_status qca_machine_power(int64_t k, qca_machine **out);
QCA_API qca_status qca_machine_upower(int64_t k, int exponent_from_zero, qca_machine **out);
QCA_API qca_status qca_machine_from_json(const char *text, qca_machine **out);
QCA_API qca_status qca_machine_load(const char *path, qca_machine **out);
QCA_API void qca_machine_free(qca_machine *machine);

/* Canonical machine file text. */
QCA_API qca_status qca_machine_to_json(const qca_machine *machine, char **out);

/* JSON report of every validation issue; QCA_VALIDATION when there are any. */
QCA_API qca_status qca_validate(const qca_machine *machine, char **report);

/* Inputs are literal words ("aabbbb") or run-length words ("a2b4"). */

/* Closed-form probabilities; built-in machines only. */
QCA_API qca_status qca_run_exact(const qca_machine *machine, const char *input, char **result);
/* Exhaustive enumeration of one round. */
QCA_API qca_status qca_run_enumerate(const qca_machine *machine, const char *input, char **result);

typedef struct qca_sample_options {
    uint64_t seed;
    uint64_t step_budget;   /* per trajectory */
    uint64_t trajectories;
    unsigned threads;       /* 0: QCA_THREADS or hardware concurrency */
} qca_sample_options;

QCA_API void qca_sample_options_default(qca_sample_options *options);
/* Monte Carlo trajectories. QCA_BUDGET when any trajectory ran out of steps. */
QCA_API qca_status qca_run_sample(const qca_machine *machine, const char *input, const qca_sample_options *options,
                                  char **result);
/* One trajectory as CSV lines: step,state,head,counter,outcome. */
QCA_API qca_status qca_run_trace(const qca_machine *machine, const char *input, uint64_t seed, uint64_t step_budget,
                                 char **trace);

/* Largest counter value; sampled != 0 runs one trajectory instead of the
 * exact schedule. */
QCA_API qca_status qca_profile(const qca_machine *machine, const char *input, int sampled, uint64_t seed,
                               char **result);

typedef struct qca_sweep_request {
    const char *machine;   /* "power" or "upower" */
    const char *k_range;   /* "1" or "1..4" */
    const char *m_range;
    const char *n_range;   /* power only; may be NULL for upower */
    int exponent_from_zero;
    unsigned threads;
    const char *format;    /* "csv" or "json" */
} qca_sweep_request;

QCA_API qca_status qca_sweep(const qca_sweep_request *request, char **table);

/* Lexicographically largest (a, b, c, d) with a >= b >= c >= d >= 0 and
 * a^2 + b^2 + c^2 + d^2 = n. */
QCA_API qca_status qca_foursquare(uint64_t n, uint64_t out[4]);

/* Description, membership, and bounds of a unary family. A NULL input skips
 * the membership query; otherwise it must be a unary word such as "a64". */
QCA_API qca_status qca_family(const char *family, int64_t k, const char *input, char **result);

#ifdef __cplusplus
}
#endif

#endif
