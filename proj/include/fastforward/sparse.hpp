// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fastforward/core.hpp"

namespace ff {

struct Bm25Params {
    double k1 = 0.82;
    double b = 0.68;

    /// Passage-style collections (the default).
    static constexpr Bm25Params passage() { return {0.82, 0.68}; }
    /// Long, document-style collections.
    static constexpr Bm25Params document() { return {4.46, 0.82}; }
};

struct Document {
    DocId id;
    std::string text;
};

struct Posting {
    std::uint32_t doc;  // ordinal, see SparseIndex::doc_id
    std::uint32_t tf;

    friend bool operator==(const Posting&, const Posting&) = default;
};

/// BM25 inverted index. Document ordinals follow ascending DocId order, so
/// postings sorted by ordinal are sorted by DocId as well.
///
/// Scoring, per distinct query term t present in document d:
///   idf(t) * tf * (k1 + 1) / (tf + k1 * (1 - b + b * len(d) / avg_len))
///   idf(t) = ln(1 + (N - df + 0.5) / (df + 0.5))
/// Terms are accumulated in lexicographic order.
class SparseIndex {
public:
    static SparseIndex build(std::span<const Document> corpus, Bm25Params params = {});

    /// Top-`k_s` documents sharing at least one term with the query.
    RankedList retrieve(std::string_view query, std::size_t k_s) const;
    RankedList retrieve(const Query& query, std::size_t k_s) const { return retrieve(query.text, k_s); }

    std::size_t doc_count() const noexcept { return ids_.size(); }
    std::size_t term_count() const noexcept { return postings_.size(); }
    double avg_doc_length() const noexcept { return avg_doc_length_; }
    const Bm25Params& params() const noexcept { return params_; }

    const DocId& doc_id(std::uint32_t ordinal) const { return ids_.at(ordinal); }
    std::uint32_t doc_length(std::uint32_t ordinal) const { return doc_lengths_.at(ordinal); }
    /// Empty span for unknown terms.
    std::span<const Posting> postings(std::string_view term) const;
    double idf(std::string_view term) const;

    std::string serialize() const;
    static SparseIndex deserialize(std::string_view bytes);
    void save(const std::string& path) const;
    static SparseIndex load(const std::string& path);

private:
    void finalize();

    Bm25Params params_;
    std::vector<DocId> ids_;
    std::vector<std::uint32_t> doc_lengths_;
    std::unordered_map<std::string, std::vector<Posting>> postings_;
    double avg_doc_length_ = 0.0;
};

}  // namespace ff
