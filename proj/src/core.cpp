// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastforward/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iostream>
#include <mutex>
#include <unordered_set>

namespace ff {

DenseVector::DenseVector(std::vector<float> values) : values_(std::move(values)) {
    for (float v : values_) {
        if (!std::isfinite(v)) throw InvalidArgument("vector component is not finite");
    }
}

bool is_valid_doc_id(std::string_view id) noexcept {
    if (id.empty()) return false;
    return std::none_of(id.begin(), id.end(),
                        [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; });
}

DocId::DocId(std::string id) : id_(std::move(id)) {
    if (!is_valid_doc_id(id_)) throw InvalidArgument("invalid document id '" + id_ + "'");
}

RankedList::RankedList(std::vector<ScoredDoc> hits) : hits_(std::move(hits)) {
    std::unordered_set<std::string_view> seen;
    seen.reserve(hits_.size());
    for (const auto& h : hits_) {
        if (!std::isfinite(h.score)) throw InvalidArgument("score of '" + h.doc.str() + "' is not finite");
        if (!seen.insert(h.doc.str()).second) throw InvalidArgument("duplicate document '" + h.doc.str() + "'");
    }
    std::sort(hits_.begin(), hits_.end(), ranks_before);
}

RankedList RankedList::truncated(std::size_t k) const {
    RankedList out;
    out.hits_.assign(hits_.begin(), hits_.begin() + static_cast<std::ptrdiff_t>(std::min(k, hits_.size())));
    return out;
}

std::vector<DocId> RankedList::doc_ids() const {
    std::vector<DocId> ids;
    ids.reserve(hits_.size());
    for (const auto& h : hits_) ids.push_back(h.doc);
    return ids;
}

float dot(std::span<const float> a, std::span<const float> b) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    return static_cast<float>(acc);
}

double cosine_distance(std::span<const float> a, std::span<const float> b) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = a[i], y = b[i];
        ab += x * y;
        aa += x * x;
        bb += y * y;
    }
    if (aa == 0.0 || bb == 0.0) return 1.0;
    const double d = 1.0 - ab / std::sqrt(aa * bb);
    return std::clamp(d, 0.0, 2.0);
}

double maxp(std::span<const double> passage_scores) {
    if (passage_scores.empty()) throw InvalidArgument("document has no passages");
    return *std::max_element(passage_scores.begin(), passage_scores.end());
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        const auto u = static_cast<unsigned char>(c);
        if (u >= 0x80 || std::isalnum(u)) {
            current.push_back(static_cast<char>(std::tolower(u)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::uint64_t toy_hash(std::string_view token, std::uint64_t seed) noexcept {
    std::uint64_t h = 14695981039346656037ULL ^ seed;
    for (char c : token) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

DenseVector toy_encode(std::string_view text, std::size_t dim, std::uint64_t seed) {
    if (dim < 2) throw InvalidArgument("toy encoder dimension must be >= 2");
    std::vector<double> counts(dim, 0.0);
    for (const auto& tok : tokenize(text)) counts[toy_hash(tok, seed) % dim] += 1.0;
    double norm = 0.0;
    for (double c : counts) norm += c * c;
    std::vector<float> out(dim, 0.0f);
    if (norm > 0.0) {
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < dim; ++i) out[i] = static_cast<float>(counts[i] / norm);
    }
    return DenseVector(std::move(out));
}

namespace {

std::mutex& sink_mutex() {
    static std::mutex m;
    return m;
}

WarningSink& sink() {
    static WarningSink s;
    return s;
}

}  // namespace

void set_warning_sink(WarningSink s) {
    std::lock_guard lock(sink_mutex());
    sink() = std::move(s);
}

void warn(std::string_view message) {
    std::lock_guard lock(sink_mutex());
    if (sink()) {
        sink()(message);
    } else {
        std::cerr << "warning: " << message << '\n';
    }
}

}  // namespace ff
