// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastforward/rank.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ff {

namespace {

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must be in [0, 1]");
}

}  // namespace

void InterpolationConfig::validate() const {
    check_alpha(alpha);
    if (k == 0) throw InvalidArgument("k must be >= 1");
    if (k_s < k) throw InvalidArgument("k_S must be >= k");
    if (k_d == 0) throw InvalidArgument("k_D must be >= 1");
}

RankedList interpolate(const RankedList& sparse_hits, const DenseScores& dense, double alpha) {
    check_alpha(alpha);
    std::vector<ScoredDoc> out;
    out.reserve(sparse_hits.size());
    for (const auto& hit : sparse_hits) {
        auto it = dense.find(hit.doc);
        if (it == dense.end()) throw MissingDocument(hit.doc.str());
        out.push_back({hit.doc, interpolate_score(hit.score, it->second, alpha)});
    }
    return RankedList(std::move(out));
}

RankedList interpolate(const RankedList& sparse_hits, const ForwardIndex& index, std::span<const float> query,
                       double alpha) {
    check_alpha(alpha);
    std::vector<ScoredDoc> out;
    out.reserve(sparse_hits.size());
    for (const auto& hit : sparse_hits) {
        out.push_back({hit.doc, interpolate_score(hit.score, index.dense_score(query, hit.doc), alpha)});
    }
    return RankedList(std::move(out));
}

RankedList rerank(const RankedList& sparse_hits, const DenseScores& dense) { return interpolate(sparse_hits, dense, 0.0); }

RankedList hybrid_score(const RankedList& sparse_hits, const RankedList& dense_hits, double alpha) {
    check_alpha(alpha);
    std::unordered_map<DocId, double> dense;
    dense.reserve(dense_hits.size());
    for (const auto& hit : dense_hits) dense.emplace(hit.doc, hit.score);
    std::vector<ScoredDoc> out;
    out.reserve(sparse_hits.size());
    for (const auto& hit : sparse_hits) {
        auto it = dense.find(hit.doc);
        const double d = it != dense.end() ? it->second : hit.score;
        out.push_back({hit.doc, interpolate_score(hit.score, d, alpha)});
    }
    return RankedList(std::move(out));
}

EarlyStopResult early_stop_interpolate(const RankedList& sparse_hits, const DenseScorer& dense,
                                       const InterpolationConfig& config, std::optional<double> s_d_override) {
    config.validate();
    if (s_d_override && !std::isfinite(*s_d_override)) throw InvalidArgument("s_D override must be finite");

    const double alpha = config.alpha;
    const std::size_t depth = std::min(config.k_s, sparse_hits.size());

    // Max-heap under ranks_before: the front is the hit that ranks last.
    std::vector<ScoredDoc> queue;
    queue.reserve(config.k);
    auto push = [&](ScoredDoc hit) {
        queue.push_back(std::move(hit));
        std::push_heap(queue.begin(), queue.end(), ranks_before);
    };
    auto pop_min = [&] {
        std::pop_heap(queue.begin(), queue.end(), ranks_before);
        ScoredDoc min = std::move(queue.back());
        queue.pop_back();
        return min;
    };

    EarlyStopResult result;
    double s_d = s_d_override.value_or(-std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i < depth; ++i) {
        const auto& hit = sparse_hits[i];
        std::optional<ScoredDoc> evicted;
        if (queue.size() == config.k) {
            evicted = pop_min();
            const double s_best = interpolate_score(hit.score, s_d, alpha);
            if (s_best <= evicted->score) {
                push(std::move(*evicted));
                result.stopped_early = true;
                break;
            }
        }
        const double phi_d = dense(hit.doc);
        ++result.lookups;
        s_d = std::max(phi_d, s_d);
        ScoredDoc candidate{hit.doc, interpolate_score(hit.score, phi_d, alpha)};
        if (evicted && ranks_before(*evicted, candidate)) {
            push(std::move(*evicted));
        } else {
            push(std::move(candidate));
        }
    }
    result.scanned = result.stopped_early ? i + 1 : i;
    result.topk = RankedList(std::move(queue));
    return result;
}

EarlyStopResult early_stop_interpolate(const RankedList& sparse_hits, const ForwardIndex& index,
                                       std::span<const float> query, const InterpolationConfig& config,
                                       std::optional<double> s_d_override) {
    if (query.size() != index.dimension()) throw DimensionMismatch(index.dimension(), query.size());
    return early_stop_interpolate(
        sparse_hits, [&](const DocId& doc) { return index.dense_score(query, doc); }, config, s_d_override);
}

}  // namespace ff
