// Copyright 2026 The crisisnet Authors
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

/* C interface to the crisisnet library. Objects are opaque handles owned by
 * the caller and released with the matching *_free function. Every fallible
 * call returns a cn_status; on failure cn_last_error() describes the cause
 * for the calling thread. Strings returned through char** out-parameters are
 * heap copies released with cn_string_free. */

#ifndef CRISISNET_CRISISNET_H_
#define CRISISNET_CRISISNET_H_

#include <stddef.h>
#include <stdint.h>

#if defined(CRISISNET_BUILDING_LIBRARY)
#define CN_API __attribute__((visibility("default")))
#else
#define CN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cn_status {
  CN_OK = 0,
  CN_ERR_INVALID_ARGUMENT = 1,
  CN_ERR_CONFIG = 2,
  CN_ERR_INGEST = 3,
  CN_ERR_INSUFFICIENT_DATA = 4,
  CN_ERR_IO = 5,
  CN_ERR_ORDERING = 6,
  CN_ERR_WINDOW = 7,
  CN_ERR_UNKNOWN_NODE = 8,
  CN_ERR_INTERNAL = 9
} cn_status;

typedef struct cn_stream cn_stream; /* sorted temporal message stream */
typedef struct cn_graph cn_graph;   /* simple undirected graph */

CN_API const char* cn_version(void);
CN_API const char* cn_status_string(cn_status status);
/* Message of the last failed call on this thread; "" if none. */
CN_API const char* cn_last_error(void);
CN_API void cn_string_free(char* s);

/* format_json: a log-format object as accepted under "format" in a pipeline
 * config, or NULL for the defaults (sender,recipient,unix seconds, comma). */
CN_API cn_status cn_stream_parse_file(const char* path, const char* format_json,
                                      cn_stream** out);
CN_API cn_status cn_stream_parse_buffer(const char* data, size_t size,
                                        const char* format_json, cn_stream** out);
CN_API cn_status cn_stream_write_file(const cn_stream* stream, const char* path,
                                      const char* format_json);
/* params_json: hub corpus parameters as under "synthetic" in a config. */
CN_API cn_status cn_stream_generate_hub_corpus(const char* params_json, cn_stream** out);
/* Ingest counters of a parsed stream as JSON (rows_read, accepted,
 * self_loops_dropped, duplicates_collapsed, malformed[{line, reason}]).
 * Generated streams report zeros. */
CN_API cn_status cn_stream_ingest_report(const cn_stream* stream, char** report_json);
CN_API size_t cn_stream_edge_count(const cn_stream* stream);
CN_API size_t cn_stream_node_count(const cn_stream* stream);
CN_API void cn_stream_free(cn_stream* stream);

/* m0 == 0 means m0 = m. */
CN_API cn_status cn_graph_generate_ba(size_t n, size_t m, size_t m0, uint64_t seed,
                                      cn_graph** out);
CN_API cn_status cn_graph_generate_er(size_t n, double p, uint64_t seed, cn_graph** out);
/* Undirected projection of the whole stream. */
CN_API cn_status cn_graph_from_stream(const cn_stream* stream, cn_graph** out);
CN_API cn_status cn_graph_read_edge_list(const char* path, cn_graph** out);
CN_API cn_status cn_graph_write_edge_list(const cn_graph* graph, const char* path);
CN_API size_t cn_graph_node_count(const cn_graph* graph);
CN_API size_t cn_graph_edge_count(const cn_graph* graph);
/* Fills `out` (capacity node_count) with degrees in ascending node-id order. */
CN_API cn_status cn_graph_degrees(const cn_graph* graph, uint64_t* out, size_t capacity);
CN_API void cn_graph_free(cn_graph* graph);

typedef enum cn_fit_target { CN_FIT_PDF = 0, CN_FIT_CCDF = 1 } cn_fit_target;

typedef struct cn_powerlaw_fit {
  double gamma;
  uint64_t xmin;
  double r_squared;    /* NaN for the MLE */
  double ks_statistic; /* NaN for OLS */
  size_t n_tail;
} cn_powerlaw_fit;

/* xmin == 0 selects the KS-optimal xmin. */
CN_API cn_status cn_fit_mle(const uint64_t* degrees, size_t count, uint64_t xmin,
                            cn_powerlaw_fit* out);
/* Zeros are dropped before the histogram is built. */
CN_API cn_status cn_fit_ols(const uint64_t* degrees, size_t count, cn_fit_target target,
                            uint64_t xmin, cn_powerlaw_fit* out);

typedef enum cn_removal_kind {
  CN_REMOVAL_RANDOM = 0,
  CN_REMOVAL_TARGETED_ADAPTIVE = 1,
  CN_REMOVAL_TARGETED_STATIC = 2
} cn_removal_kind;

typedef struct cn_curve_point {
  double fraction_removed;
  size_t removed;
  double giant_fraction;
  double avg_path_length; /* NaN when undefined or not computed */
} cn_curve_point;

/* out must hold `count` points; fractions strictly ascending in [0, 1). */
CN_API cn_status cn_robustness_curve(const cn_graph* graph, cn_removal_kind kind,
                                     uint64_t seed, const double* fractions, size_t count,
                                     int path_lengths, cn_curve_point* out);

/* The preset for rerunning the published experiment on a real corpus, as a
 * config object without an input; callers add "input". */
CN_API cn_status cn_paper_recipe(char** config_json);
/* Validates and normalizes a config, filling every default. */
CN_API cn_status cn_config_normalize(const char* config_json, char** normalized_json);

/* Runs the full analysis for a JSON config and returns the report JSON. An
 * empty corpus yields CN_ERR_INSUFFICIENT_DATA with the report still set. */
CN_API cn_status cn_pipeline_run(const char* config_json, char** report_json);
/* Writes report.json (or robustness.json) and the plot-data files. */
CN_API cn_status cn_report_emit(const char* report_json, const char* dir);
CN_API cn_status cn_robustness_run(const char* config_json, char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* CRISISNET_CRISISNET_H_ */
