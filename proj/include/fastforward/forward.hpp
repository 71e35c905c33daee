// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fastforward/core.hpp"
#include "fastforward/sparse.hpp"

namespace ff {

/// Read-only view of one document's passage vectors, in original order.
class PassageView {
public:
    PassageView(std::span<const float> data, std::size_t dim) : data_(data), dim_(dim) {}

    std::size_t size() const noexcept { return data_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }
    std::span<const float> operator[](std::size_t i) const { return data_.subspan(i * dim_, dim_); }
    std::span<const float> data() const noexcept { return data_; }

    std::vector<DenseVector> to_vectors() const;

private:
    std::span<const float> data_;
    std::size_t dim_;
};

/// Document id to passage vectors, resident in memory, hash-map lookup.
///
/// On-disk form (`.ffi`, little-endian):
///   "FFWD", version u32, tag u8 = 1, dimension u32, doc count u64,
///   per document: id length u16, id bytes, passage count u32,
///                 passage count * dimension f32,
///   offset table: per document id length u16, id bytes, record offset u64,
///   table offset u64 (last 8 bytes of the file).
/// Documents are written in ascending id order, so equal contents produce
/// equal files.
class ForwardIndex {
public:
    struct Entry {
        DocId id;
        std::vector<DenseVector> passages;
    };

    static ForwardIndex build(std::vector<Entry> entries);

    std::size_t dimension() const noexcept { return dim_; }
    std::size_t doc_count() const noexcept { return ids_.size(); }
    std::size_t vector_count() const noexcept { return data_.size() / dim_; }
    /// Ascending id order.
    std::span<const DocId> doc_ids() const noexcept { return ids_; }

    bool contains(const DocId& doc) const { return slots_.contains(doc.str()); }
    /// Throws MissingDocument for unknown ids.
    PassageView lookup(const DocId& doc) const;
    std::optional<PassageView> find(const DocId& doc) const;
    PassageView passages_at(std::size_t slot) const;
    /// Byte offset of the document's record in the serialized form.
    std::uint64_t byte_offset(const DocId& doc) const;

    /// Maximum over the document's passages of dot(query, passage).
    double dense_score(std::span<const float> query, const DocId& doc) const;
    double dense_score(const DenseVector& query, const DocId& doc) const {
        return dense_score(query.values(), doc);
    }

    /// Exhaustive dense retrieval over every document.
    RankedList dense_topk(std::span<const float> query, std::size_t k_d) const;
    RankedList dense_topk(const DenseVector& query, std::size_t k_d) const { return dense_topk(query.values(), k_d); }

    std::string serialize() const;
    static ForwardIndex deserialize(std::string_view bytes);
    void save(const std::string& path) const;
    static ForwardIndex load(const std::string& path);

    /// Vector interchange JSONL: {"id": "...", "passages": [[f, ...], ...]}
    /// per line, floats in shortest round-trip form.
    std::string to_interchange() const;
    static ForwardIndex from_interchange(std::string_view jsonl);
    void save_interchange(const std::string& path) const;
    static ForwardIndex load_interchange(const std::string& path);

private:
    void check_query(std::span<const float> query) const;

    std::size_t dim_ = 0;
    std::vector<DocId> ids_;
    std::vector<std::size_t> first_;  // passage start per slot, size doc_count() + 1
    std::vector<float> data_;
    std::vector<std::uint64_t> offsets_;
    std::unordered_map<std::string, std::uint32_t> slots_;
};

/// Token windows over `text` for maxP indexing. Text without tokens yields
/// a single empty passage so every document keeps one vector.
std::vector<std::string> split_passages(std::string_view text, std::size_t window = 200, std::size_t stride = 200);

/// Forward index built with the toy encoder over token-window passages.
ForwardIndex encode_corpus_toy(std::span<const Document> corpus, std::size_t dim, std::uint64_t seed,
                               std::size_t window = 200, std::size_t stride = 200);

}  // namespace ff
