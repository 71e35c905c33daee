// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fastforward/eval.hpp"
#include "fastforward/forward.hpp"
#include "fastforward/latency.hpp"
#include "fastforward/rank.hpp"
#include "fastforward/sparse.hpp"

namespace ff {

enum class Mode { rerank, interpolate, hybrid, early_stop };

std::optional<Mode> parse_mode(std::string_view name);
std::string_view mode_name(Mode mode);

struct SearchOptions {
    Mode mode = Mode::interpolate;
    InterpolationConfig ranking;
    /// Early stopping only: seed s_D with the true maximum dense score of the
    /// sparse candidates, which makes the result exact. The oracle lookups
    /// are neither timed nor counted.
    bool oracle_sd = false;

    void validate() const { ranking.validate(); }
};

struct QueryResult {
    RankedList ranking;  // at most `k` hits
    PhaseTimes times;
    bool stopped_early = false;
};

/// Second stage for one query, given its first-stage hits (at most k_S are
/// used). Phases: scoring covers forward-index lookups and dot products (and
/// the dense retrieval in hybrid mode), interpolation the score combination,
/// sorting the final ordering. Early stopping interleaves all three and is
/// reported under scoring.
QueryResult run_query(const RankedList& sparse_hits, const ForwardIndex& index, std::span<const float> query,
                      const SearchOptions& options);

/// Assigns vectors by qid; every query must receive one of the index dimension.
void attach_query_vectors(std::vector<Query>& queries, const std::vector<std::pair<std::string, DenseVector>>& vectors,
                          std::size_t dim);
void toy_encode_queries(std::vector<Query>& queries, std::size_t dim, std::uint64_t seed);

/// Full search over a query set. In early-stop mode the run carries one
/// comment per query with its lookup count. `total_lookups`, when given,
/// receives the number of forward-index lookups over all queries.
Run search(const SparseIndex& sparse, const ForwardIndex& forward, std::span<const Query> queries,
           const SearchOptions& options, const std::string& tag = "fastforward",
           std::size_t* total_lookups = nullptr);

/// Latency of the second stage only: first-stage hits are computed up front.
LatencyReport bench(const SparseIndex& sparse, const ForwardIndex& forward, std::span<const Query> queries,
                    const SearchOptions& options, std::size_t warmup_rounds, std::size_t rounds);

}  // namespace ff
