// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastforward/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "binary_io.hpp"

namespace ff {

SparseIndex SparseIndex::build(std::span<const Document> corpus, Bm25Params params) {
    if (corpus.empty()) throw InvalidArgument("cannot build a sparse index from an empty corpus");
    if (!(params.k1 >= 0.0) || !(params.b >= 0.0 && params.b <= 1.0)) {
        throw InvalidArgument("BM25 parameters out of range (k1 >= 0, 0 <= b <= 1)");
    }

    std::vector<std::size_t> order(corpus.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return corpus[x].id < corpus[y].id; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (corpus[order[i]].id == corpus[order[i - 1]].id) {
            throw InvalidArgument("duplicate document id '" + corpus[order[i]].id.str() + "'");
        }
    }

    SparseIndex index;
    index.params_ = params;
    index.ids_.reserve(corpus.size());
    index.doc_lengths_.reserve(corpus.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& doc = corpus[order[i]];
        const auto tokens = tokenize(doc.text);
        std::map<std::string_view, std::uint32_t> tf;
        for (const auto& t : tokens) ++tf[t];
        const auto ordinal = static_cast<std::uint32_t>(i);
        for (const auto& [term, count] : tf) index.postings_[std::string(term)].push_back({ordinal, count});
        index.ids_.push_back(doc.id);
        index.doc_lengths_.push_back(static_cast<std::uint32_t>(tokens.size()));
    }
    index.finalize();
    return index;
}

void SparseIndex::finalize() {
    double total = 0.0;
    for (auto len : doc_lengths_) total += len;
    avg_doc_length_ = ids_.empty() ? 0.0 : total / static_cast<double>(ids_.size());
}

std::span<const Posting> SparseIndex::postings(std::string_view term) const {
    auto it = postings_.find(std::string(term));
    if (it == postings_.end()) return {};
    return it->second;
}

double SparseIndex::idf(std::string_view term) const {
    const auto df = static_cast<double>(postings(term).size());
    const auto n = static_cast<double>(doc_count());
    return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

RankedList SparseIndex::retrieve(std::string_view query, std::size_t k_s) const {
    if (k_s == 0) throw InvalidArgument("k_S must be >= 1");
    const auto tokens = tokenize(query);
    const std::set<std::string> terms(tokens.begin(), tokens.end());

    std::vector<double> scores(doc_count(), 0.0);
    std::vector<std::uint32_t> touched;
    std::vector<bool> seen(doc_count(), false);
    const double k1 = params_.k1, b = params_.b;
    for (const auto& term : terms) {
        auto plist = postings(term);
        if (plist.empty()) continue;
        const double w = idf(term);
        for (const auto& p : plist) {
            const double tf = p.tf;
            const double norm = k1 * (1.0 - b + b * doc_lengths_[p.doc] / avg_doc_length_);
            scores[p.doc] += w * tf * (k1 + 1.0) / (tf + norm);
            if (!seen[p.doc]) {
                seen[p.doc] = true;
                touched.push_back(p.doc);
            }
        }
    }

    // Ordinals follow DocId order, so (score desc, ordinal asc) is the
    // RankedList order.
    auto before = [&](std::uint32_t x, std::uint32_t y) {
        if (scores[x] != scores[y]) return scores[x] > scores[y];
        return x < y;
    };
    const std::size_t k = std::min(k_s, touched.size());
    std::partial_sort(touched.begin(), touched.begin() + static_cast<std::ptrdiff_t>(k), touched.end(), before);

    std::vector<ScoredDoc> hits;
    hits.reserve(k);
    for (std::size_t i = 0; i < k; ++i) hits.push_back({ids_[touched[i]], scores[touched[i]]});
    return RankedList(std::move(hits));
}

// Layout after the shared header (tag = sparse):
//   k1 f64, b f64, doc count u64,
//   per doc (ordinal order): id (u16 length + bytes), length u32,
//   term count u64,
//   per term (lexicographic): term (u16 length + bytes), posting count u32,
//     then (ordinal u32, tf u32) pairs.
std::string SparseIndex::serialize() const {
    detail::ByteWriter w;
    w.put_header(detail::SectionTag::sparse);
    w.put_f64(params_.k1);
    w.put_f64(params_.b);
    w.put(static_cast<std::uint64_t>(ids_.size()));
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        w.put_short_string(ids_[i].str());
        w.put(doc_lengths_[i]);
    }
    std::vector<const std::string*> terms;
    terms.reserve(postings_.size());
    for (const auto& [term, _] : postings_) terms.push_back(&term);
    std::sort(terms.begin(), terms.end(), [](auto* x, auto* y) { return *x < *y; });
    w.put(static_cast<std::uint64_t>(terms.size()));
    for (const auto* term : terms) {
        const auto& plist = postings_.at(*term);
        w.put_short_string(*term);
        w.put(static_cast<std::uint32_t>(plist.size()));
        for (const auto& p : plist) {
            w.put(p.doc);
            w.put(p.tf);
        }
    }
    return w.release();
}

SparseIndex SparseIndex::deserialize(std::string_view bytes) {
    detail::ByteReader r(bytes);
    r.expect_header(detail::SectionTag::sparse);
    SparseIndex index;
    index.params_.k1 = r.get_f64();
    index.params_.b = r.get_f64();
    const auto n = r.get<std::uint64_t>();
    if (n == 0) throw FormatError("sparse index has no documents");
    if (n > r.remaining()) throw FormatError("document count exceeds file size");
    index.ids_.reserve(n);
    index.doc_lengths_.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        auto id = r.get_short_string();
        if (!is_valid_doc_id(id)) throw FormatError("invalid document id in sparse index");
        if (!index.ids_.empty() && !(index.ids_.back().str() < id)) {
            throw FormatError("sparse index documents not in ascending id order");
        }
        index.ids_.emplace_back(std::move(id));
        index.doc_lengths_.push_back(r.get<std::uint32_t>());
    }
    const auto terms = r.get<std::uint64_t>();
    if (terms > r.remaining()) throw FormatError("term count exceeds file size");
    for (std::uint64_t t = 0; t < terms; ++t) {
        auto term = r.get_short_string();
        const auto count = r.get<std::uint32_t>();
        if (count == 0 || count > r.remaining() / 8) throw FormatError("bad posting count for '" + term + "'");
        std::vector<Posting> plist(count);
        for (auto& p : plist) {
            p.doc = r.get<std::uint32_t>();
            p.tf = r.get<std::uint32_t>();
            if (p.doc >= n || p.tf == 0) throw FormatError("bad posting for '" + term + "'");
        }
        if (!index.postings_.emplace(std::move(term), std::move(plist)).second) {
            throw FormatError("duplicate term in sparse index");
        }
    }
    if (r.remaining() != 0) throw FormatError("trailing bytes after sparse index");
    index.finalize();
    return index;
}

void SparseIndex::save(const std::string& path) const { detail::write_file(path, serialize()); }

SparseIndex SparseIndex::load(const std::string& path) { return deserialize(detail::read_file(path)); }

}  // namespace ff
