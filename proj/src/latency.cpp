// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastforward/latency.hpp"

#include <cstdio>

#include "fastforward/error.hpp"

namespace ff {

LatencyReport measure_latency(const QueryPipeline& pipeline, std::span<const std::string> qids,
                              std::size_t warmup_rounds, std::size_t rounds) {
    if (rounds == 0) throw InvalidArgument("rounds must be >= 1");

    struct Sum {
        std::int64_t scoring = 0, interpolation = 0, sorting = 0;
        std::size_t lookups = 0;
    };
    std::vector<Sum> sums(qids.size());
    for (std::size_t round = 0; round < warmup_rounds + rounds; ++round) {
        const bool measured = round >= warmup_rounds;
        for (std::size_t q = 0; q < qids.size(); ++q) {
            const auto t = pipeline(q);
            if (!measured) continue;
            sums[q].scoring += t.scoring_ns;
            sums[q].interpolation += t.interpolation_ns;
            sums[q].sorting += t.sorting_ns;
            sums[q].lookups += t.lookups;
        }
    }

    LatencyReport report;
    report.rounds = rounds;
    report.warmup_rounds = warmup_rounds;
    report.mean.qid = "mean";
    const double per_round_ms = 1e-6 / static_cast<double>(rounds);
    for (std::size_t q = 0; q < qids.size(); ++q) {
        QueryLatency row;
        row.qid = qids[q];
        row.scoring_ms = static_cast<double>(sums[q].scoring) * per_round_ms;
        row.interpolation_ms = static_cast<double>(sums[q].interpolation) * per_round_ms;
        row.sorting_ms = static_cast<double>(sums[q].sorting) * per_round_ms;
        row.total_ms = row.scoring_ms + row.interpolation_ms + row.sorting_ms;
        row.lookups = static_cast<double>(sums[q].lookups) / static_cast<double>(rounds);
        report.total_lookups += sums[q].lookups / rounds;
        report.mean.scoring_ms += row.scoring_ms;
        report.mean.interpolation_ms += row.interpolation_ms;
        report.mean.sorting_ms += row.sorting_ms;
        report.mean.lookups += row.lookups;
        report.per_query.push_back(std::move(row));
    }
    if (!qids.empty()) {
        const auto n = static_cast<double>(qids.size());
        report.mean.scoring_ms /= n;
        report.mean.interpolation_ms /= n;
        report.mean.sorting_ms /= n;
        report.mean.lookups /= n;
    }
    report.mean.total_ms = report.mean.scoring_ms + report.mean.interpolation_ms + report.mean.sorting_ms;
    return report;
}

namespace {

std::string csv_row(const QueryLatency& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%.3f,%.3f,%.3f,%.3f,%.2f\n", r.qid.c_str(), r.scoring_ms, r.interpolation_ms,
                  r.sorting_ms, r.total_ms, r.lookups);
    return buf;
}

}  // namespace

std::string LatencyReport::csv() const {
    std::string out = "qid,scoring_ms,interpolation_ms,sorting_ms,total_ms,lookups\n";
    for (const auto& r : per_query) out += csv_row(r);
    out += csv_row(mean);
    return out;
}

std::string LatencyReport::table() const {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-12s %12s %16s %12s %12s %10s\n", "qid", "scoring_ms", "interpolation_ms",
                  "sorting_ms", "total_ms", "lookups");
    out += buf;
    auto row = [&](const QueryLatency& r) {
        std::snprintf(buf, sizeof buf, "%-12s %12.3f %16.3f %12.3f %12.3f %10.2f\n", r.qid.c_str(), r.scoring_ms,
                      r.interpolation_ms, r.sorting_ms, r.total_ms, r.lookups);
        out += buf;
    };
    for (const auto& r : per_query) row(r);
    row(mean);
    std::snprintf(buf, sizeof buf, "(%zu measured rounds after %zu warmup, %zu lookups per round)\n", rounds,
                  warmup_rounds, total_lookups);
    out += buf;
    return out;
}

}  // namespace ff
