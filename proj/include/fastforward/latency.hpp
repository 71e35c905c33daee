// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ff {

/// Per-query cost split. Tokenization and first-stage retrieval are not part
/// of any phase.
struct PhaseTimes {
    std::int64_t scoring_ns = 0;
    std::int64_t interpolation_ns = 0;
    std::int64_t sorting_ns = 0;
    std::size_t lookups = 0;

    std::int64_t total_ns() const noexcept { return scoring_ns + interpolation_ns + sorting_ns; }
};

/// Monotonic stopwatch; `lap` returns nanoseconds since the previous lap.
class Stopwatch {
public:
    using Clock = std::chrono::steady_clock;

    Stopwatch() : last_(Clock::now()) {}

    std::int64_t lap() {
        const auto now = Clock::now();
        const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(now - last_).count();
        last_ = now;
        return ns;
    }

private:
    Clock::time_point last_;
};

struct QueryLatency {
    std::string qid;
    double scoring_ms = 0.0;
    double interpolation_ms = 0.0;
    double sorting_ms = 0.0;
    double total_ms = 0.0;
    double lookups = 0.0;
};

struct LatencyReport {
    std::vector<QueryLatency> per_query;
    QueryLatency mean;  // qid "mean"
    std::size_t total_lookups = 0;
    std::size_t rounds = 0;
    std::size_t warmup_rounds = 0;

    /// `qid,scoring_ms,interpolation_ms,sorting_ms,total_ms,lookups`, one row
    /// per query and a final `mean` row; times with 3 decimals.
    std::string csv() const;
    std::string table() const;
};

/// Runs the pipeline for query index i (0-based).
using QueryPipeline = std::function<PhaseTimes(std::size_t)>;

/// Runs `warmup_rounds` discarded passes over all queries, then `rounds`
/// measured passes, sequentially. Per-query phase times are averaged over the
/// measured passes; the mean row averages over queries.
LatencyReport measure_latency(const QueryPipeline& pipeline, std::span<const std::string> qids,
                              std::size_t warmup_rounds, std::size_t rounds);

}  // namespace ff
