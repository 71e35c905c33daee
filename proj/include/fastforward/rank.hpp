// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>

#include "fastforward/core.hpp"
#include "fastforward/forward.hpp"

namespace ff {

/// Tuned interpolation weights per dual-encoder family.
namespace default_alpha {
inline constexpr double tct_colbert = 0.2;
inline constexpr double ance = 0.5;
inline constexpr double bert_cls = 0.7;
}  // namespace default_alpha

struct InterpolationConfig {
    double alpha = default_alpha::tct_colbert;
    std::size_t k = 10;       // final cut-off depth
    std::size_t k_s = 1000;   // sparse depth, >= k
    std::size_t k_d = 1000;   // dense depth for hybrid retrieval

    /// Throws InvalidArgument unless 0 <= alpha <= 1, k >= 1, k <= k_s, k_d >= 1.
    void validate() const;
};

using DenseScores = std::unordered_map<DocId, double>;
/// Dense score for one document; throws MissingDocument when it has none.
using DenseScorer = std::function<double(const DocId&)>;

inline double interpolate_score(double sparse, double dense, double alpha) noexcept {
    return alpha * sparse + (1.0 - alpha) * dense;
}

/// alpha * sparse + (1 - alpha) * dense for every sparse hit, re-sorted.
/// Every hit needs a dense score.
RankedList interpolate(const RankedList& sparse_hits, const DenseScores& dense, double alpha);
RankedList interpolate(const RankedList& sparse_hits, const ForwardIndex& index, std::span<const float> query,
                       double alpha);

/// Plain re-ranking by dense score (interpolation with alpha = 0).
RankedList rerank(const RankedList& sparse_hits, const DenseScores& dense);

/// Hybrid retrieval over the sparse candidates only: documents missing from
/// `dense_hits` fall back to their sparse score in the dense slot.
RankedList hybrid_score(const RankedList& sparse_hits, const RankedList& dense_hits, double alpha);

struct EarlyStopResult {
    RankedList topk;
    std::size_t lookups = 0;
    bool stopped_early = false;
    /// Length of the sparse prefix that was examined.
    std::size_t scanned = 0;
};

/// Interpolation with early stopping over the first `config.k_s` sparse hits.
///
/// Keeps the best `config.k` interpolated hits in a bounded queue. Once the
/// queue is full, each candidate first gets an optimistic bound
///   s_best = alpha * sparse + (1 - alpha) * s_D
/// where s_D is the largest dense score seen so far (or `s_d_override`), and
/// the scan stops as soon as s_best <= the queue minimum. With s_D equal to
/// the true maximum dense score the result is the exact top-k; with the
/// running estimate it is an approximation whose scores are still exact.
EarlyStopResult early_stop_interpolate(const RankedList& sparse_hits, const DenseScorer& dense,
                                       const InterpolationConfig& config,
                                       std::optional<double> s_d_override = std::nullopt);
EarlyStopResult early_stop_interpolate(const RankedList& sparse_hits, const ForwardIndex& index,
                                       std::span<const float> query, const InterpolationConfig& config,
                                       std::optional<double> s_d_override = std::nullopt);

}  // namespace ff
