// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fastforward/error.hpp"

namespace ff {

/// Fixed-dimension vector of 32-bit floats. Components are always finite.
class DenseVector {
public:
    DenseVector() = default;
    explicit DenseVector(std::vector<float> values);
    DenseVector(std::initializer_list<float> values) : DenseVector(std::vector<float>(values)) {}

    static DenseVector zeros(std::size_t dim) { return DenseVector(std::vector<float>(dim, 0.0f)); }

    std::size_t dim() const noexcept { return values_.size(); }
    std::span<const float> values() const noexcept { return values_; }
    float operator[](std::size_t i) const { return values_[i]; }

    friend bool operator==(const DenseVector&, const DenseVector&) = default;

private:
    std::vector<float> values_;
};

/// Non-empty document identifier without whitespace.
class DocId {
public:
    DocId() = default;
    explicit DocId(std::string id);

    const std::string& str() const noexcept { return id_; }

    friend bool operator==(const DocId&, const DocId&) = default;
    friend auto operator<=>(const DocId&, const DocId&) = default;

private:
    std::string id_;
};

bool is_valid_doc_id(std::string_view id) noexcept;

struct ScoredDoc {
    DocId doc;
    double score = 0.0;

    friend bool operator==(const ScoredDoc&, const ScoredDoc&) = default;
};

/// Shared ordering rule: descending score, then ascending DocId.
inline bool ranks_before(const ScoredDoc& a, const ScoredDoc& b) noexcept {
    if (a.score != b.score) return a.score > b.score;
    return a.doc < b.doc;
}

/// Hits ordered by descending score with ascending-DocId tie-break. The
/// constructor sorts its input, and rejects duplicate ids or non-finite scores.
class RankedList {
public:
    RankedList() = default;
    explicit RankedList(std::vector<ScoredDoc> hits);

    std::size_t size() const noexcept { return hits_.size(); }
    bool empty() const noexcept { return hits_.empty(); }
    const ScoredDoc& operator[](std::size_t i) const { return hits_[i]; }
    std::span<const ScoredDoc> hits() const noexcept { return hits_; }
    auto begin() const noexcept { return hits_.begin(); }
    auto end() const noexcept { return hits_.end(); }

    /// First `k` hits (or all of them).
    RankedList truncated(std::size_t k) const;
    std::vector<DocId> doc_ids() const;

    friend bool operator==(const RankedList&, const RankedList&) = default;

private:
    std::vector<ScoredDoc> hits_;
};

struct Query {
    std::string qid;
    std::string text;
    std::optional<DenseVector> vector;
};

/// Dot product, accumulated in double and rounded to float.
float dot(std::span<const float> a, std::span<const float> b);
inline float dot(const DenseVector& a, const DenseVector& b) { return dot(a.values(), b.values()); }

/// 1 - cos(a, b), clamped to [0, 2]. Returns 1.0 when either norm is zero.
double cosine_distance(std::span<const float> a, std::span<const float> b);
inline double cosine_distance(const DenseVector& a, const DenseVector& b) {
    return cosine_distance(a.values(), b.values());
}

/// Document score as the maximum of its passage scores.
double maxp(std::span<const double> passage_scores);

/// Lowercased ASCII tokens, split on runs of non-alphanumeric bytes. Bytes
/// >= 0x80 count as token characters so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text);

/// Seeded FNV-1a 64: offset basis XOR seed, then the usual byte loop.
std::uint64_t toy_hash(std::string_view token, std::uint64_t seed) noexcept;

/// Deterministic bag-of-hashed-tokens encoder: each token increments bucket
/// toy_hash(token, seed) % dim, then the counts are L2-normalized. Text with
/// no tokens maps to the zero vector.
DenseVector toy_encode(std::string_view text, std::size_t dim, std::uint64_t seed);

/// Warnings emitted by library code (e.g. unknown query ids during
/// evaluation). Defaults to stderr.
using WarningSink = std::function<void(std::string_view)>;
void set_warning_sink(WarningSink sink);
void warn(std::string_view message);

}  // namespace ff

template <>
struct std::hash<ff::DocId> {
    std::size_t operator()(const ff::DocId& d) const noexcept { return std::hash<std::string>{}(d.str()); }
};
