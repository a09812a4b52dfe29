// Copyright 2026 The QForge Authors.
//
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

/*
 * qforge: adversarial question generation over article corpora.
 *
 * C interface to the engine. Objects are opaque handles created and
 * destroyed through this API. Every fallible call returns a qf_status; on
 * failure qf_last_error() describes the problem for the calling thread.
 * Strings returned through char** out-parameters are owned by the caller
 * and must be released with qf_string_free().
 */
#ifndef QFORGE_QFORGE_H_
#define QFORGE_QFORGE_H_

#include <stddef.h>

#if defined(_WIN32)
#  if defined(QFORGE_BUILDING_LIBRARY)
#    define QF_API __declspec(dllexport)
#  else
#    define QF_API __declspec(dllimport)
#  endif
#else
#  define QF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qf_status {
  QF_OK = 0,
  QF_ERR_INVALID_ARGUMENT = 1,
  QF_ERR_IO = 2,
  QF_ERR_PARSE = 3,
  QF_ERR_BACKEND_UNAVAILABLE = 4,
  QF_ERR_PROTOCOL = 5,
  QF_ERR_INVALID_ARTICLE = 6,
  QF_ERR_INSUFFICIENT_RATERS = 7,
  QF_ERR_EMPTY = 8,
  /* Some articles failed; a resume file was written. */
  QF_ERR_PARTIAL = 9,
  QF_ERR_INTERNAL = 10
} qf_status;

typedef struct qf_config qf_config;
typedef struct qf_engine qf_engine;
typedef struct qf_graph qf_graph;

QF_API const char* qf_version(void);
QF_API const char* qf_status_name(qf_status status);
/* Message for the most recent failure on this thread; never NULL. */
QF_API const char* qf_last_error(void);
QF_API void qf_string_free(char* s);

/* ---- configuration (flat key=value, keys match the pipeline fields) ---- */

QF_API qf_status qf_config_create(qf_config** out);
QF_API void qf_config_destroy(qf_config* config);
QF_API qf_status qf_config_load_file(qf_config* config, const char* path);
QF_API qf_status qf_config_set(qf_config* config, const char* key, const char* value);
/* key=value lines, sorted by key. */
QF_API qf_status qf_config_dump(const qf_config* config, char** out);

/* ---- engine: a configuration bound to a backend ---- */

/* Connects to the backend named by the config ("stub" or a base URL). */
QF_API qf_status qf_engine_create(const qf_config* config, qf_engine** out);
QF_API void qf_engine_destroy(qf_engine* engine);
/* Wire-protocol health check; *out receives the health JSON. */
QF_API qf_status qf_engine_health(qf_engine* engine, char** out);

/*
 * Runs maximal generation over the article JSONL at input_path, writing
 * QAPair JSONL to output_path plus <output>.graph.json (or graph_path when
 * non-NULL), <output>.report.json and <output>.manifest.json. workers <= 0
 * uses one worker per hardware thread. With resume != 0 a resume file left
 * by an earlier partial run is honored. Returns QF_ERR_PARTIAL when some
 * articles failed. report_json/report_text may be NULL.
 */
QF_API qf_status qf_engine_run(qf_engine* engine, const char* input_path,
                               const char* output_path, const char* graph_path,
                               int workers, int resume, char** report_json,
                               char** report_text);

/* Maximal generation for one article given as a JSON object; *out receives
 * QAPair JSONL for that article (unlinked). */
QF_API qf_status qf_engine_process_article(qf_engine* engine,
                                           const char* article_json, char** out);

/* Runs both maximal generation and the summarization baseline on the same
 * corpus. */
QF_API qf_status qf_engine_compare(qf_engine* engine, const char* input_path,
                                   int workers, char** report_json,
                                   char** report_text);

/* ---- evaluation and corpus tools (no backend needed) ---- */

/* Joins QAPair JSONL with an annotation CSV. baseline_annotations_path may
 * be NULL; when set, its mean quality is the uplift reference. */
QF_API qf_status qf_eval(const char* pairs_path, const char* annotations_path,
                         const char* baseline_annotations_path,
                         char** report_json, char** report_text);

QF_API qf_status qf_corpus_stats(const char* input_path, int min_words,
                                 char** stats_json);

/* ---- question graph ---- */

QF_API qf_status qf_graph_open(const char* path, qf_graph** out);
QF_API void qf_graph_destroy(qf_graph* graph);
/* *out receives a JSON array of pair ids in insertion order. */
QF_API qf_status qf_graph_query(const qf_graph* graph, const char* keyphrase,
                                char** out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* QFORGE_QFORGE_H_ */
