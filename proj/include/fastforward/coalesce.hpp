// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "fastforward/forward.hpp"

namespace ff {

struct CoalesceConfig {
    /// Cosine-distance threshold; finite and >= 0.
    double delta = 0.0;

    void validate() const;
};

/// Output of sequential coalescing for one document.
struct CoalescedPassages {
    std::vector<DenseVector> vectors;
    /// Index of the first input passage of each run; `vectors[i]` is the mean
    /// of inputs [run_starts[i], run_starts[i + 1]).
    std::vector<std::size_t> run_starts;
};

/// Sequential coalescing of one document's passages.
///
/// Walks the passages in order keeping a running mean of the current run.
/// A passage whose cosine distance to that mean is >= delta closes the run
/// (its mean is emitted) and starts a new one; otherwise it joins the run.
/// The final run's mean is emitted at the end. Means are accumulated in
/// double and stored as float, without re-normalization.
CoalescedPassages coalesce_passages(const PassageView& passages, const CoalesceConfig& config);
CoalescedPassages coalesce_passages(std::span<const DenseVector> passages, const CoalesceConfig& config);

struct CoalesceStats {
    std::size_t input_vectors = 0;
    std::size_t output_vectors = 0;

    /// output / input, i.e. the fraction of vectors kept.
    double compression_ratio() const {
        return input_vectors ? static_cast<double>(output_vectors) / static_cast<double>(input_vectors) : 1.0;
    }
};

struct CoalescedIndex {
    ForwardIndex index;
    CoalesceStats stats;
};

CoalescedIndex coalesce_index(const ForwardIndex& index, const CoalesceConfig& config);

struct SweepRow {
    double delta = 0.0;
    CoalesceStats stats;
};

std::vector<SweepRow> coalesce_sweep(const ForwardIndex& index, std::span<const double> deltas);

/// CSV with header `delta,total_vectors,compression_ratio`.
std::string sweep_csv(std::span<const SweepRow> rows);

}  // namespace ff
