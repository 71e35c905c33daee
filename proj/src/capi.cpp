// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastforward/fastforward.h"

#include <cstdlib>
#include <cstring>
#include <mutex>
#include <new>
#include <stdexcept>
#include <string>

#include "binary_io.hpp"
#include "fastforward/coalesce.hpp"
#include "fastforward/eval.hpp"
#include "fastforward/forward.hpp"
#include "fastforward/io.hpp"
#include "fastforward/pipeline.hpp"
#include "fastforward/sparse.hpp"

struct ff_sparse_index {
    ff::SparseIndex index;
};

struct ff_forward_index {
    ff::ForwardIndex index;
};

struct ff_ranked_list {
    ff::RankedList list;
};

struct ff_eval_report {
    ff::EvalReport report;
    std::vector<std::string> names;
};

namespace {

thread_local std::string last_error;

ff_status fail(ff_status status, const std::string& message) {
    last_error = message;
    return status;
}

ff_status status_of(ff::ErrorCode code) {
    switch (code) {
        case ff::ErrorCode::invalid_argument: return FF_ERR_INVALID_ARGUMENT;
        case ff::ErrorCode::io: return FF_ERR_IO;
        case ff::ErrorCode::format: return FF_ERR_FORMAT;
        case ff::ErrorCode::missing_document: return FF_ERR_MISSING_DOCUMENT;
        case ff::ErrorCode::dimension_mismatch: return FF_ERR_DIMENSION_MISMATCH;
    }
    return FF_ERR_INTERNAL;
}

/// Runs `fn`, translating exceptions into status codes. Inside data-loading
/// calls (`loading`), invalid-argument errors describe the input, not the
/// caller, and are reported as FF_ERR_INPUT.
/// Caller mistakes detected at the boundary, as opposed to bad file contents.
struct BadArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <typename Fn>
ff_status guarded(Fn&& fn, bool loading = false) noexcept {
    try {
        fn();
        return FF_OK;
    } catch (const BadArgument& e) {
        return fail(FF_ERR_INVALID_ARGUMENT, e.what());
    } catch (const ff::Error& e) {
        if (loading && e.code() == ff::ErrorCode::invalid_argument) return fail(FF_ERR_INPUT, e.what());
        return fail(status_of(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(FF_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(FF_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(FF_ERR_INTERNAL, "unknown error");
    }
}

void require(const void* p, const char* what) {
    if (!p) throw BadArgument(std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ff::SearchOptions to_options(const ff_search_config* config) {
    require(config, "config");
    ff::SearchOptions opts;
    switch (config->mode) {
        case FF_MODE_RERANK: opts.mode = ff::Mode::rerank; break;
        case FF_MODE_INTERPOLATE: opts.mode = ff::Mode::interpolate; break;
        case FF_MODE_HYBRID: opts.mode = ff::Mode::hybrid; break;
        case FF_MODE_EARLY_STOP: opts.mode = ff::Mode::early_stop; break;
        default: throw ff::InvalidArgument("unknown search mode");
    }
    opts.ranking.alpha = config->alpha;
    opts.ranking.k = config->k;
    opts.ranking.k_s = config->k_s;
    opts.ranking.k_d = config->k_d;
    opts.oracle_sd = config->oracle_sd != 0;
    opts.validate();
    return opts;
}

std::vector<ff::Query> load_queries(const ff_query_source* source, std::size_t dim) {
    require(source, "query source");
    require(source->queries_path, "queries path");
    auto queries = ff::read_queries(source->queries_path);
    try {
        if (source->vectors_path) {
            ff::attach_query_vectors(queries, ff::read_query_vectors(source->vectors_path), dim);
        } else {
            ff::toy_encode_queries(queries, dim, source->toy_seed);
        }
    } catch (const ff::InvalidArgument& e) {
        throw ff::Error(ff::ErrorCode::format, e.what());
    }
    return queries;
}

std::mutex warning_mutex;
ff_warning_fn warning_fn = nullptr;
void* warning_user = nullptr;

}  // namespace

extern "C" {

const char* ff_version(void) { return "1.0.0"; }

const char* ff_last_error(void) { return last_error.c_str(); }

const char* ff_status_name(ff_status status) {
    switch (status) {
        case FF_OK: return "ok";
        case FF_ERR_INVALID_ARGUMENT: return "invalid argument";
        case FF_ERR_IO: return "i/o error";
        case FF_ERR_FORMAT: return "format error";
        case FF_ERR_INPUT: return "invalid input";
        case FF_ERR_MISSING_DOCUMENT: return "missing document";
        case FF_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
        case FF_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void ff_string_free(char* s) { std::free(s); }

void ff_set_warning_handler(ff_warning_fn fn, void* user) {
    {
        std::lock_guard lock(warning_mutex);
        warning_fn = fn;
        warning_user = user;
    }
    if (!fn) {
        ff::set_warning_sink(nullptr);
        return;
    }
    ff::set_warning_sink([](std::string_view msg) {
        std::lock_guard lock(warning_mutex);
        if (warning_fn) warning_fn(std::string(msg).c_str(), warning_user);
    });
}

ff_status ff_toy_encode(const char* text, uint32_t dim, uint64_t seed, float* out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        const auto v = ff::toy_encode(text, dim, seed);
        std::memcpy(out, v.values().data(), v.dim() * sizeof(float));
    });
}

ff_status ff_sparse_build(const char* corpus_path, double k1, double b, ff_sparse_index** out) {
    return guarded(
        [&] {
            require(corpus_path, "corpus path");
            require(out, "out");
            if (!(k1 >= 0.0) || !(b >= 0.0 && b <= 1.0)) throw BadArgument("BM25 needs k1 >= 0 and b in [0, 1]");
            const auto corpus = ff::read_corpus(corpus_path);
            *out = new ff_sparse_index{ff::SparseIndex::build(corpus, {k1, b})};
        },
        true);
}

ff_status ff_sparse_load(const char* path, ff_sparse_index** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new ff_sparse_index{ff::SparseIndex::load(path)};
    });
}

ff_status ff_sparse_save(const ff_sparse_index* index, const char* path) {
    return guarded([&] {
        require(index, "index");
        require(path, "path");
        index->index.save(path);
    });
}

size_t ff_sparse_doc_count(const ff_sparse_index* index) { return index ? index->index.doc_count() : 0; }

ff_status ff_sparse_retrieve(const ff_sparse_index* index, const char* query, size_t k_s, ff_ranked_list** out) {
    return guarded([&] {
        require(index, "index");
        require(query, "query");
        require(out, "out");
        *out = new ff_ranked_list{index->index.retrieve(query, k_s)};
    });
}

void ff_sparse_free(ff_sparse_index* index) { delete index; }

ff_status ff_forward_build_toy(const char* corpus_path, uint32_t dim, uint64_t seed, uint32_t window,
                               uint32_t stride, ff_forward_index** out) {
    return guarded(
        [&] {
            require(corpus_path, "corpus path");
            require(out, "out");
            if (dim < 2) throw BadArgument("toy encoder dimension must be >= 2");
            if (window == 0 || stride == 0) throw BadArgument("passage window and stride must be >= 1");
            const auto corpus = ff::read_corpus(corpus_path);
            *out = new ff_forward_index{ff::encode_corpus_toy(corpus, dim, seed, window, stride)};
        },
        true);
}

ff_status ff_forward_load_interchange(const char* path, ff_forward_index** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new ff_forward_index{ff::ForwardIndex::load_interchange(path)};
    });
}

ff_status ff_forward_save_interchange(const ff_forward_index* index, const char* path) {
    return guarded([&] {
        require(index, "index");
        require(path, "path");
        index->index.save_interchange(path);
    });
}

ff_status ff_forward_load(const char* path, ff_forward_index** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new ff_forward_index{ff::ForwardIndex::load(path)};
    });
}

ff_status ff_forward_save(const ff_forward_index* index, const char* path) {
    return guarded([&] {
        require(index, "index");
        require(path, "path");
        index->index.save(path);
    });
}

uint32_t ff_forward_dimension(const ff_forward_index* index) {
    return index ? static_cast<uint32_t>(index->index.dimension()) : 0;
}

size_t ff_forward_doc_count(const ff_forward_index* index) { return index ? index->index.doc_count() : 0; }

size_t ff_forward_vector_count(const ff_forward_index* index) { return index ? index->index.vector_count() : 0; }

ff_status ff_forward_lookup(const ff_forward_index* index, const char* doc_id, const float** vectors,
                            size_t* passages) {
    return guarded([&] {
        require(index, "index");
        require(doc_id, "doc id");
        require(vectors, "vectors");
        require(passages, "passages");
        if (!ff::is_valid_doc_id(doc_id)) throw ff::MissingDocument(doc_id);
        const auto view = index->index.lookup(ff::DocId(doc_id));
        *vectors = view.data().data();
        *passages = view.size();
    });
}

ff_status ff_forward_dense_score(const ff_forward_index* index, const float* query, size_t dim, const char* doc_id,
                                 double* out) {
    return guarded([&] {
        require(index, "index");
        require(query, "query");
        require(doc_id, "doc id");
        require(out, "out");
        if (!ff::is_valid_doc_id(doc_id)) throw ff::MissingDocument(doc_id);
        *out = index->index.dense_score(std::span<const float>(query, dim), ff::DocId(doc_id));
    });
}

ff_status ff_forward_dense_topk(const ff_forward_index* index, const float* query, size_t dim, size_t k_d,
                                ff_ranked_list** out) {
    return guarded([&] {
        require(index, "index");
        require(query, "query");
        require(out, "out");
        *out = new ff_ranked_list{index->index.dense_topk(std::span<const float>(query, dim), k_d)};
    });
}

ff_status ff_forward_coalesce(const ff_forward_index* index, double delta, ff_forward_index** out,
                              size_t* input_vectors, size_t* output_vectors) {
    return guarded([&] {
        require(index, "index");
        require(out, "out");
        auto result = ff::coalesce_index(index->index, ff::CoalesceConfig{delta});
        if (input_vectors) *input_vectors = result.stats.input_vectors;
        if (output_vectors) *output_vectors = result.stats.output_vectors;
        *out = new ff_forward_index{std::move(result.index)};
    });
}

ff_status ff_forward_coalesce_sweep(const ff_forward_index* index, const double* deltas, size_t count,
                                    const char* csv_path) {
    return guarded([&] {
        require(index, "index");
        require(csv_path, "csv path");
        if (count > 0) require(deltas, "deltas");
        const auto rows = ff::coalesce_sweep(index->index, std::span<const double>(deltas, count));
        ff::detail::write_file(csv_path, ff::sweep_csv(rows));
    });
}

void ff_forward_free(ff_forward_index* index) { delete index; }

size_t ff_ranked_list_size(const ff_ranked_list* list) { return list ? list->list.size() : 0; }

const char* ff_ranked_list_doc(const ff_ranked_list* list, size_t i) {
    if (!list || i >= list->list.size()) return nullptr;
    return list->list[i].doc.str().c_str();
}

double ff_ranked_list_score(const ff_ranked_list* list, size_t i) {
    if (!list || i >= list->list.size()) return 0.0;
    return list->list[i].score;
}

void ff_ranked_list_free(ff_ranked_list* list) { delete list; }

void ff_search_config_init(ff_search_config* config) {
    if (!config) return;
    const ff::InterpolationConfig defaults;
    config->mode = FF_MODE_INTERPOLATE;
    config->alpha = defaults.alpha;
    config->k = defaults.k;
    config->k_s = defaults.k_s;
    config->k_d = defaults.k_d;
    config->oracle_sd = 0;
}

ff_status ff_search_config_validate(const ff_search_config* config) {
    return guarded([&] { to_options(config); });
}

ff_status ff_mode_parse(const char* name, ff_mode* out) {
    return guarded([&] {
        require(name, "name");
        require(out, "out");
        const auto mode = ff::parse_mode(name);
        if (!mode) throw ff::InvalidArgument("unknown mode '" + std::string(name) + "'");
        switch (*mode) {
            case ff::Mode::rerank: *out = FF_MODE_RERANK; break;
            case ff::Mode::interpolate: *out = FF_MODE_INTERPOLATE; break;
            case ff::Mode::hybrid: *out = FF_MODE_HYBRID; break;
            case ff::Mode::early_stop: *out = FF_MODE_EARLY_STOP; break;
        }
    });
}

ff_status ff_search(const ff_sparse_index* sparse, const ff_forward_index* forward, const ff_query_source* queries,
                    const ff_search_config* config, const char* tag, const char* run_path, size_t* total_lookups) {
    return guarded([&] {
        const auto opts = to_options(config);
        require(sparse, "sparse index");
        require(forward, "forward index");
        require(run_path, "run path");
        const auto qs = load_queries(queries, forward->index.dimension());
        const auto run = ff::search(sparse->index, forward->index, qs, opts, tag ? tag : "fastforward", total_lookups);
        run.save(run_path);
    });
}

ff_status ff_bench(const ff_sparse_index* sparse, const ff_forward_index* forward, const ff_query_source* queries,
                   const ff_search_config* config, size_t warmup, size_t rounds, const char* csv_path, char** table,
                   ff_latency_summary* summary) {
    return guarded([&] {
        const auto opts = to_options(config);
        require(sparse, "sparse index");
        require(forward, "forward index");
        if (rounds == 0) throw ff::InvalidArgument("rounds must be >= 1");
        const auto qs = load_queries(queries, forward->index.dimension());
        const auto report = ff::bench(sparse->index, forward->index, qs, opts, warmup, rounds);
        if (csv_path) ff::detail::write_file(csv_path, report.csv());
        if (summary) {
            summary->scoring_ms = report.mean.scoring_ms;
            summary->interpolation_ms = report.mean.interpolation_ms;
            summary->sorting_ms = report.mean.sorting_ms;
            summary->total_ms = report.mean.total_ms;
            summary->lookups = report.mean.lookups;
            summary->queries = report.per_query.size();
        }
        if (table) *table = dup_string(report.table());
    });
}

ff_status ff_evaluate(const char* run_path, const char* qrels_path, const char* metrics, ff_eval_report** out) {
    return guarded([&] {
        require(run_path, "run path");
        require(qrels_path, "qrels path");
        require(metrics, "metrics");
        require(out, "out");
        const auto parsed = ff::Metric::parse_list(metrics);
        const auto run = ff::Run::load(run_path);
        const auto qrels = ff::Qrels::load(qrels_path);
        auto* report = new ff_eval_report{ff::evaluate(run, qrels, parsed), {}};
        for (const auto& m : report->report.metrics) report->names.push_back(m.name());
        *out = report;
    });
}

size_t ff_eval_report_metric_count(const ff_eval_report* report) { return report ? report->names.size() : 0; }

const char* ff_eval_report_metric_name(const ff_eval_report* report, size_t metric) {
    if (!report || metric >= report->names.size()) return nullptr;
    return report->names[metric].c_str();
}

double ff_eval_report_mean(const ff_eval_report* report, size_t metric) {
    if (!report || metric >= report->report.means.size()) return 0.0;
    return report->report.means[metric];
}

size_t ff_eval_report_query_count(const ff_eval_report* report) { return report ? report->report.qids.size() : 0; }

const char* ff_eval_report_qid(const ff_eval_report* report, size_t query) {
    if (!report || query >= report->report.qids.size()) return nullptr;
    return report->report.qids[query].c_str();
}

double ff_eval_report_value(const ff_eval_report* report, size_t query, size_t metric) {
    if (!report || query >= report->report.per_query.size() || metric >= report->names.size()) return 0.0;
    return report->report.per_query[query][metric];
}

char* ff_eval_report_table(const ff_eval_report* report, int per_query) {
    if (!report) return nullptr;
    try {
        return dup_string(report->report.table(per_query != 0));
    } catch (...) {
        return nullptr;
    }
}

void ff_eval_report_free(ff_eval_report* report) { delete report; }

}  // extern "C"
