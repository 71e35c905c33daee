// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastforward/pipeline.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace ff {

std::optional<Mode> parse_mode(std::string_view name) {
    if (name == "rerank") return Mode::rerank;
    if (name == "interpolate") return Mode::interpolate;
    if (name == "hybrid") return Mode::hybrid;
    if (name == "early-stop" || name == "early_stop") return Mode::early_stop;
    return std::nullopt;
}

std::string_view mode_name(Mode mode) {
    switch (mode) {
        case Mode::rerank: return "rerank";
        case Mode::interpolate: return "interpolate";
        case Mode::hybrid: return "hybrid";
        case Mode::early_stop: return "early-stop";
    }
    return "unknown";
}

namespace {

QueryResult interpolate_timed(const RankedList& hits, const ForwardIndex& index, std::span<const float> query,
                              double alpha, std::size_t k) {
    QueryResult r;
    Stopwatch sw;
    std::vector<double> dense(hits.size());
    for (std::size_t i = 0; i < hits.size(); ++i) dense[i] = index.dense_score(query, hits[i].doc);
    r.times.lookups = hits.size();
    r.times.scoring_ns = sw.lap();

    std::vector<ScoredDoc> combined;
    combined.reserve(hits.size());
    for (std::size_t i = 0; i < hits.size(); ++i) {
        combined.push_back({hits[i].doc, interpolate_score(hits[i].score, dense[i], alpha)});
    }
    r.times.interpolation_ns = sw.lap();

    r.ranking = RankedList(std::move(combined)).truncated(k);
    r.times.sorting_ns = sw.lap();
    return r;
}

QueryResult hybrid_timed(const RankedList& hits, const ForwardIndex& index, std::span<const float> query,
                         const InterpolationConfig& cfg) {
    QueryResult r;
    Stopwatch sw;
    const auto dense_hits = index.dense_topk(query, cfg.k_d);
    std::unordered_map<DocId, double> dense;
    dense.reserve(dense_hits.size());
    for (const auto& h : dense_hits) dense.emplace(h.doc, h.score);
    r.times.scoring_ns = sw.lap();

    std::vector<ScoredDoc> combined;
    combined.reserve(hits.size());
    for (const auto& h : hits) {
        auto it = dense.find(h.doc);
        combined.push_back({h.doc, interpolate_score(h.score, it != dense.end() ? it->second : h.score, cfg.alpha)});
    }
    r.times.interpolation_ns = sw.lap();

    r.ranking = RankedList(std::move(combined)).truncated(cfg.k);
    r.times.sorting_ns = sw.lap();
    return r;
}

}  // namespace

QueryResult run_query(const RankedList& sparse_hits, const ForwardIndex& index, std::span<const float> query,
                      const SearchOptions& options) {
    options.validate();
    if (query.size() != index.dimension()) throw DimensionMismatch(index.dimension(), query.size());
    const auto& cfg = options.ranking;
    const auto hits = sparse_hits.size() > cfg.k_s ? sparse_hits.truncated(cfg.k_s) : sparse_hits;

    switch (options.mode) {
        case Mode::rerank: return interpolate_timed(hits, index, query, 0.0, cfg.k);
        case Mode::interpolate: return interpolate_timed(hits, index, query, cfg.alpha, cfg.k);
        case Mode::hybrid: return hybrid_timed(hits, index, query, cfg);
        case Mode::early_stop: break;
    }

    std::optional<double> s_d;
    if (options.oracle_sd && !hits.empty()) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& h : hits) best = std::max(best, index.dense_score(query, h.doc));
        s_d = best;
    }
    QueryResult r;
    Stopwatch sw;
    auto es = early_stop_interpolate(hits, index, query, cfg, s_d);
    r.times.scoring_ns = sw.lap();
    r.times.lookups = es.lookups;
    r.stopped_early = es.stopped_early;
    r.ranking = std::move(es.topk);
    return r;
}

void attach_query_vectors(std::vector<Query>& queries, const std::vector<std::pair<std::string, DenseVector>>& vectors,
                          std::size_t dim) {
    std::unordered_map<std::string, const DenseVector*> by_qid;
    for (const auto& [qid, v] : vectors) by_qid.emplace(qid, &v);
    for (auto& q : queries) {
        auto it = by_qid.find(q.qid);
        if (it == by_qid.end()) throw InvalidArgument("no vector for query '" + q.qid + "'");
        if (it->second->dim() != dim) throw DimensionMismatch(dim, it->second->dim());
        q.vector = *it->second;
    }
}

void toy_encode_queries(std::vector<Query>& queries, std::size_t dim, std::uint64_t seed) {
    for (auto& q : queries) q.vector = toy_encode(q.text, dim, seed);
}

namespace {

const DenseVector& vector_of(const Query& q) {
    if (!q.vector) throw InvalidArgument("query '" + q.qid + "' has no vector");
    return *q.vector;
}

}  // namespace

Run search(const SparseIndex& sparse, const ForwardIndex& forward, std::span<const Query> queries,
           const SearchOptions& options, const std::string& tag, std::size_t* total_lookups) {
    options.validate();
    Run run;
    run.tag = tag;
    std::vector<const Query*> ordered;
    for (const auto& q : queries) ordered.push_back(&q);
    std::sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) { return a->qid < b->qid; });

    std::size_t lookups = 0;
    for (const auto* q : ordered) {
        const auto hits = sparse.retrieve(q->text, options.ranking.k_s);
        auto r = run_query(hits, forward, vector_of(*q).values(), options);
        if (options.mode == Mode::early_stop) {
            run.comments.push_back("lookups qid=" + q->qid + " n=" + std::to_string(r.times.lookups) +
                                   " stopped_early=" + (r.stopped_early ? "1" : "0"));
        }
        lookups += r.times.lookups;
        run.set(q->qid, std::move(r.ranking));
    }
    if (options.mode == Mode::early_stop) run.comments.push_back("lookups total=" + std::to_string(lookups));
    if (total_lookups) *total_lookups = lookups;
    return run;
}

LatencyReport bench(const SparseIndex& sparse, const ForwardIndex& forward, std::span<const Query> queries,
                    const SearchOptions& options, std::size_t warmup_rounds, std::size_t rounds) {
    options.validate();
    std::vector<std::string> qids;
    std::vector<RankedList> hits;
    std::vector<std::span<const float>> vectors;
    for (const auto& q : queries) {
        qids.push_back(q.qid);
        hits.push_back(sparse.retrieve(q.text, options.ranking.k_s));
        vectors.push_back(vector_of(q).values());
    }
    return measure_latency(
        [&](std::size_t i) { return run_query(hits[i], forward, vectors[i], options).times; }, qids, warmup_rounds,
        rounds);
}

}  // namespace ff
