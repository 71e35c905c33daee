/*
 * Copyright 2026 The Fast-Forward Authors
 * SPDX-License-Identifier: Apache-2.0
 */

/*
 * C interface of libfastforward.
 *
 * Objects are opaque handles created by ff_*_build / ff_*_load style calls and
 * released with the matching ff_*_free. Every fallible call returns an
 * ff_status; on failure ff_last_error() describes the problem. The message is
 * thread-local and stays valid until the next failing call on that thread.
 * Handles are immutable once created and may be shared across threads.
 */

#ifndef FASTFORWARD_H
#define FASTFORWARD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FASTFORWARD_BUILD)
#    define FF_API __declspec(dllexport)
#  else
#    define FF_API __declspec(dllimport)
#  endif
#else
#  define FF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ff_status {
    FF_OK = 0,
    FF_ERR_INVALID_ARGUMENT = 1, /* bad parameter or configuration */
    FF_ERR_IO = 2,               /* file cannot be read or written */
    FF_ERR_FORMAT = 3,           /* malformed file contents */
    FF_ERR_INPUT = 4,            /* well-formed but invalid data (e.g. duplicate ids) */
    FF_ERR_MISSING_DOCUMENT = 5,
    FF_ERR_DIMENSION_MISMATCH = 6,
    FF_ERR_INTERNAL = 7
} ff_status;

typedef struct ff_sparse_index ff_sparse_index;
typedef struct ff_forward_index ff_forward_index;
typedef struct ff_ranked_list ff_ranked_list;
typedef struct ff_eval_report ff_eval_report;

FF_API const char* ff_version(void);
FF_API const char* ff_last_error(void);
FF_API const char* ff_status_name(ff_status status);
/* Releases strings returned by ff_bench and ff_eval_report_table. */
FF_API void ff_string_free(char* s);

/* Library warnings go to stderr unless a handler is installed. Pass NULL to
 * restore the default. */
typedef void (*ff_warning_fn)(const char* message, void* user);
FF_API void ff_set_warning_handler(ff_warning_fn fn, void* user);

/* ---- toy encoder -------------------------------------------------------- */

/* Writes `dim` floats to `out`. */
FF_API ff_status ff_toy_encode(const char* text, uint32_t dim, uint64_t seed, float* out);

/* ---- sparse (BM25) index ------------------------------------------------ */

/* Corpus is TSV (doc_id<TAB>text) or JSONL ({"id", "text"}) by extension. */
FF_API ff_status ff_sparse_build(const char* corpus_path, double k1, double b, ff_sparse_index** out);
FF_API ff_status ff_sparse_load(const char* path, ff_sparse_index** out);
FF_API ff_status ff_sparse_save(const ff_sparse_index* index, const char* path);
FF_API size_t ff_sparse_doc_count(const ff_sparse_index* index);
FF_API ff_status ff_sparse_retrieve(const ff_sparse_index* index, const char* query, size_t k_s,
                                    ff_ranked_list** out);
FF_API void ff_sparse_free(ff_sparse_index* index);

/* ---- forward index ------------------------------------------------------ */

/* Encodes each document's token windows (window/stride tokens) with the toy
 * encoder. */
FF_API ff_status ff_forward_build_toy(const char* corpus_path, uint32_t dim, uint64_t seed, uint32_t window,
                                      uint32_t stride, ff_forward_index** out);
/* Vector interchange JSONL: {"id": "...", "passages": [[f, ...], ...]}. */
FF_API ff_status ff_forward_load_interchange(const char* path, ff_forward_index** out);
FF_API ff_status ff_forward_save_interchange(const ff_forward_index* index, const char* path);
/* Binary .ffi form. */
FF_API ff_status ff_forward_load(const char* path, ff_forward_index** out);
FF_API ff_status ff_forward_save(const ff_forward_index* index, const char* path);

FF_API uint32_t ff_forward_dimension(const ff_forward_index* index);
FF_API size_t ff_forward_doc_count(const ff_forward_index* index);
FF_API size_t ff_forward_vector_count(const ff_forward_index* index);

/* `*vectors` points at passages * dimension floats owned by the index. */
FF_API ff_status ff_forward_lookup(const ff_forward_index* index, const char* doc_id, const float** vectors,
                                   size_t* passages);
FF_API ff_status ff_forward_dense_score(const ff_forward_index* index, const float* query, size_t dim,
                                        const char* doc_id, double* out);
FF_API ff_status ff_forward_dense_topk(const ff_forward_index* index, const float* query, size_t dim, size_t k_d,
                                       ff_ranked_list** out);

/* Sequential coalescing with cosine-distance threshold `delta`. The vector
 * counts before and after are optional outputs. */
FF_API ff_status ff_forward_coalesce(const ff_forward_index* index, double delta, ff_forward_index** out,
                                     size_t* input_vectors, size_t* output_vectors);
/* Writes `delta,total_vectors,compression_ratio` rows to `csv_path`. */
FF_API ff_status ff_forward_coalesce_sweep(const ff_forward_index* index, const double* deltas, size_t count,
                                           const char* csv_path);
FF_API void ff_forward_free(ff_forward_index* index);

/* ---- ranked lists ------------------------------------------------------- */

FF_API size_t ff_ranked_list_size(const ff_ranked_list* list);
FF_API const char* ff_ranked_list_doc(const ff_ranked_list* list, size_t i);
FF_API double ff_ranked_list_score(const ff_ranked_list* list, size_t i);
FF_API void ff_ranked_list_free(ff_ranked_list* list);

/* ---- search ------------------------------------------------------------- */

typedef enum ff_mode {
    FF_MODE_RERANK = 0,
    FF_MODE_INTERPOLATE = 1,
    FF_MODE_HYBRID = 2,
    FF_MODE_EARLY_STOP = 3
} ff_mode;

typedef struct ff_search_config {
    ff_mode mode;
    double alpha; /* weight of the sparse score, [0, 1] */
    size_t k;     /* results per query */
    size_t k_s;   /* sparse candidates, >= k */
    size_t k_d;   /* dense retrieval depth (hybrid) */
    int oracle_sd; /* early stop: use the true dense maximum */
} ff_search_config;

/* mode interpolate, alpha 0.2, k 10, k_s 1000, k_d 1000, oracle off. */
FF_API void ff_search_config_init(ff_search_config* config);
FF_API ff_status ff_search_config_validate(const ff_search_config* config);
/* "rerank", "interpolate", "hybrid", "early-stop". */
FF_API ff_status ff_mode_parse(const char* name, ff_mode* out);

typedef struct ff_query_source {
    const char* queries_path; /* qid<TAB>text */
    const char* vectors_path; /* qid<TAB>f,f,... ; NULL to toy-encode the text */
    uint64_t toy_seed;
} ff_query_source;

/* Writes a TREC run to `run_path`. `total_lookups` is optional. */
FF_API ff_status ff_search(const ff_sparse_index* sparse, const ff_forward_index* forward,
                           const ff_query_source* queries, const ff_search_config* config, const char* tag,
                           const char* run_path, size_t* total_lookups);

typedef struct ff_latency_summary {
    double scoring_ms;
    double interpolation_ms;
    double sorting_ms;
    double total_ms;
    double lookups; /* mean per query */
    size_t queries;
} ff_latency_summary;

/* Second-stage latency, averaged over `rounds` after `warmup` discarded
 * rounds. `csv_path`, `table` and `summary` are optional outputs; `*table`
 * must be released with ff_string_free. */
FF_API ff_status ff_bench(const ff_sparse_index* sparse, const ff_forward_index* forward,
                          const ff_query_source* queries, const ff_search_config* config, size_t warmup,
                          size_t rounds, const char* csv_path, char** table, ff_latency_summary* summary);

/* ---- evaluation --------------------------------------------------------- */

/* `metrics` is a comma-separated list such as "ndcg@10,ap@1000,recall@1000,rr@10". */
FF_API ff_status ff_evaluate(const char* run_path, const char* qrels_path, const char* metrics,
                             ff_eval_report** out);
FF_API size_t ff_eval_report_metric_count(const ff_eval_report* report);
FF_API const char* ff_eval_report_metric_name(const ff_eval_report* report, size_t metric);
FF_API double ff_eval_report_mean(const ff_eval_report* report, size_t metric);
FF_API size_t ff_eval_report_query_count(const ff_eval_report* report);
FF_API const char* ff_eval_report_qid(const ff_eval_report* report, size_t query);
FF_API double ff_eval_report_value(const ff_eval_report* report, size_t query, size_t metric);
/* trec_eval style text; release with ff_string_free. */
FF_API char* ff_eval_report_table(const ff_eval_report* report, int per_query);
FF_API void ff_eval_report_free(ff_eval_report* report);

#ifdef __cplusplus
}
#endif

#endif /* FASTFORWARD_H */
