/* SPDX-License-Identifier: Apache-2.0 */
#ifndef PITCHLEX_PITCHLEX_H
#define PITCHLEX_PITCHLEX_H

#include <stddef.h>

#if defined(PITCHLEX_BUILDING)
#define PITCHLEX_API __attribute__((visibility("default")))
#else
#define PITCHLEX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pl_status {
  PL_OK = 0,
  PL_ERR_IO = 1,
  PL_ERR_SCHEMA = 2,
  PL_ERR_PARSE = 3,
  PL_ERR_CONFIG = 4,
  PL_ERR_DEGENERATE = 5,
  PL_ERR_SEPARATION = 6,
  PL_ERR_COLLINEAR = 7,
  PL_ERR_UNDEFINED = 8,
  PL_ERR_INVALID_ARGUMENT = 9,
  PL_ERR_EMPTY = 10,
  PL_ERR_INTERNAL = 11
} pl_status;

typedef struct pl_config pl_config;
typedef struct pl_report pl_report;
typedef struct pl_dictionary pl_dictionary;
typedef struct pl_corpus pl_corpus;
typedef struct pl_fit pl_fit;

PITCHLEX_API const char* pl_version(void);

/* Stable kebab-case name of a status, e.g. "degenerate-outcome". */
PITCHLEX_API const char* pl_status_name(pl_status status);

/* Message of the last failing call on this thread; "" if none. */
PITCHLEX_API const char* pl_last_error(void);

/*
 * Strings returned through char** out-parameters are owned by the caller.
 * Handle and string out-parameters are set to NULL when a call fails.
 */
PITCHLEX_API void pl_string_free(char* s);

/* ---- run configuration and commands ---- */

PITCHLEX_API pl_status pl_config_create(pl_config** out);
PITCHLEX_API void pl_config_free(pl_config* config);

/*
 * Keys: corpus, dict, map, sources (comma separated), out, format
 * (markdown|csv|json), standardize, keep_brackets (true|false|1|0),
 * workers, tol, max_iter, reference.
 */
PITCHLEX_API pl_status pl_config_set(pl_config* config, const char* key, const char* value);

/* command is "features", "accuracy" or "suite". */
PITCHLEX_API pl_status pl_run(const pl_config* config, const char* command, pl_report** out);

PITCHLEX_API const char* pl_report_summary(const pl_report* report);
PITCHLEX_API size_t pl_report_diagnostic_count(const pl_report* report);
PITCHLEX_API const char* pl_report_diagnostic(const pl_report* report, size_t i);
PITCHLEX_API size_t pl_report_written_count(const pl_report* report);
PITCHLEX_API const char* pl_report_written(const pl_report* report, size_t i);
PITCHLEX_API void pl_report_free(pl_report* report);

/* ---- lexicon and features ---- */

PITCHLEX_API pl_status pl_dictionary_load(const char* bytes, size_t len, pl_dictionary** out);
PITCHLEX_API pl_status pl_dictionary_demo(pl_dictionary** out);
PITCHLEX_API size_t pl_dictionary_category_count(const pl_dictionary* dict);
PITCHLEX_API void pl_dictionary_free(pl_dictionary* dict);

PITCHLEX_API size_t pl_feature_count(void);
PITCHLEX_API const char* pl_feature_name(size_t i);

/*
 * Writes pl_feature_count() values in pl_feature_name order. mapping may be
 * NULL for the identity mapping, otherwise "feature=category,...".
 */
PITCHLEX_API pl_status pl_extract_features(const pl_dictionary* dict, const char* mapping, const char* text,
                                           size_t len, double* values);

/* ---- corpus, subtitles, accuracy ---- */

PITCHLEX_API pl_status pl_corpus_load(const char* path, pl_corpus** out);
PITCHLEX_API size_t pl_corpus_size(const pl_corpus* corpus);
PITCHLEX_API const char* pl_corpus_record_id(const pl_corpus* corpus, size_t i);
PITCHLEX_API void pl_corpus_free(pl_corpus* corpus);

/* SRT, WebVTT or plain text in; one line of running text out. */
PITCHLEX_API pl_status pl_transcript_text(const char* bytes, size_t len, int strip_annotations, char** out);

/* Word-level hit rate of hyp against ref after normalization. */
PITCHLEX_API pl_status pl_hit_rate(const char* ref, const char* hyp, double* out);

/* ---- logistic regression ---- */

/*
 * x is row-major n by k. names may be NULL (columns become x1..xk). With
 * add_intercept != 0 an "(intercept)" column is prepended. max_iter <= 0 and
 * tol <= 0 select the defaults.
 */
PITCHLEX_API pl_status pl_fit_logistic(const double* x, const double* y, size_t n, size_t k,
                                       const char* const* names, int add_intercept, int max_iter, double tol,
                                       pl_fit** out);
PITCHLEX_API size_t pl_fit_param_count(const pl_fit* fit);
PITCHLEX_API const char* pl_fit_column_name(const pl_fit* fit, size_t i);
PITCHLEX_API pl_status pl_fit_coefficient(const pl_fit* fit, size_t i, double* beta, double* se, double* z,
                                          double* p);
PITCHLEX_API double pl_fit_log_likelihood(const pl_fit* fit);
PITCHLEX_API double pl_fit_null_log_likelihood(const pl_fit* fit);
PITCHLEX_API double pl_fit_pseudo_r2(const pl_fit* fit);
PITCHLEX_API int pl_fit_converged(const pl_fit* fit);
PITCHLEX_API pl_status pl_fit_json(const pl_fit* fit, char** out);
PITCHLEX_API void pl_fit_free(pl_fit* fit);

#ifdef __cplusplus
}
#endif

#endif
