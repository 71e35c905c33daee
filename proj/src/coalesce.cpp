// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastforward/coalesce.hpp"

#include <cmath>

#include "numbers.hpp"

namespace ff {

void CoalesceConfig::validate() const {
    if (!std::isfinite(delta) || delta < 0.0) throw InvalidArgument("delta must be finite and >= 0");
}

namespace {

class RunningMean {
public:
    explicit RunningMean(std::size_t dim) : sum_(dim, 0.0) {}

    void add(std::span<const float> v) {
        for (std::size_t i = 0; i < v.size(); ++i) sum_[i] += v[i];
        ++count_;
        mean_.resize(sum_.size());
        for (std::size_t i = 0; i < sum_.size(); ++i) {
            mean_[i] = static_cast<float>(sum_[i] / static_cast<double>(count_));
        }
    }

    void reset() {
        std::fill(sum_.begin(), sum_.end(), 0.0);
        count_ = 0;
    }

    std::span<const float> mean() const { return mean_; }

private:
    std::vector<double> sum_;
    std::vector<float> mean_;
    std::size_t count_ = 0;
};

template <typename Get>
CoalescedPassages coalesce_impl(std::size_t count, std::size_t dim, Get get, const CoalesceConfig& config) {
    config.validate();
    if (count == 0) throw InvalidArgument("cannot coalesce a document without passages");

    CoalescedPassages out;
    RunningMean run(dim);
    for (std::size_t i = 0; i < count; ++i) {
        const std::span<const float> v = get(i);
        if (v.size() != dim) throw DimensionMismatch(dim, v.size());
        if (i == 0) {
            out.run_starts.push_back(0);
        } else if (cosine_distance(v, run.mean()) >= config.delta) {
            out.vectors.emplace_back(std::vector<float>(run.mean().begin(), run.mean().end()));
            run.reset();
            out.run_starts.push_back(i);
        }
        run.add(v);
    }
    out.vectors.emplace_back(std::vector<float>(run.mean().begin(), run.mean().end()));
    return out;
}

}  // namespace

CoalescedPassages coalesce_passages(const PassageView& passages, const CoalesceConfig& config) {
    return coalesce_impl(passages.size(), passages.dim(), [&](std::size_t i) { return passages[i]; }, config);
}

CoalescedPassages coalesce_passages(std::span<const DenseVector> passages, const CoalesceConfig& config) {
    const auto dim = passages.empty() ? 0 : passages.front().dim();
    return coalesce_impl(passages.size(), dim, [&](std::size_t i) { return passages[i].values(); }, config);
}

CoalescedIndex coalesce_index(const ForwardIndex& index, const CoalesceConfig& config) {
    config.validate();
    std::vector<ForwardIndex::Entry> entries;
    entries.reserve(index.doc_count());
    CoalesceStats stats;
    for (std::size_t slot = 0; slot < index.doc_count(); ++slot) {
        const auto passages = index.passages_at(slot);
        auto merged = coalesce_passages(passages, config);
        stats.input_vectors += passages.size();
        stats.output_vectors += merged.vectors.size();
        entries.push_back({index.doc_ids()[slot], std::move(merged.vectors)});
    }
    return {ForwardIndex::build(std::move(entries)), stats};
}

std::vector<SweepRow> coalesce_sweep(const ForwardIndex& index, std::span<const double> deltas) {
    std::vector<SweepRow> rows;
    rows.reserve(deltas.size());
    for (double delta : deltas) {
        const CoalesceConfig config{delta};
        config.validate();
        CoalesceStats stats;
        for (std::size_t slot = 0; slot < index.doc_count(); ++slot) {
            const auto passages = index.passages_at(slot);
            stats.input_vectors += passages.size();
            stats.output_vectors += coalesce_passages(passages, config).vectors.size();
        }
        rows.push_back({delta, stats});
    }
    return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::string out = "delta,total_vectors,compression_ratio\n";
    for (const auto& row : rows) {
        out += detail::shortest(row.delta);
        out += ',';
        out += std::to_string(row.stats.output_vectors);
        out += ',';
        out += detail::shortest(row.stats.compression_ratio());
        out += '\n';
    }
    return out;
}

}  // namespace ff
