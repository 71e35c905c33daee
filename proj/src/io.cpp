// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastforward/io.hpp"

#include <unordered_set>

#include <json.hpp>

#include "binary_io.hpp"
#include "numbers.hpp"

namespace ff {

namespace {

template <typename Fn>
void for_each_line(std::string_view text, Fn fn) {
    std::size_t pos = 0, line_no = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        ++line_no;
        auto line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = nl + 1;
        if (!detail::trim(line).empty()) fn(line, line_no);
    }
}

[[noreturn]] void bad_line(std::size_t line_no, const std::string& msg) {
    throw FormatError("line " + std::to_string(line_no) + ": " + msg);
}

DocId checked_id(std::string_view id, std::size_t line_no) {
    if (!is_valid_doc_id(id)) bad_line(line_no, "invalid document id '" + std::string(id) + "'");
    return DocId(std::string(id));
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::vector<Document> parse_corpus_tsv(std::string_view text) {
    std::vector<Document> docs;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) bad_line(line_no, "expected 'doc_id<TAB>text'");
        docs.push_back({checked_id(line.substr(0, tab), line_no), std::string(line.substr(tab + 1))});
    });
    return docs;
}

std::vector<Document> parse_corpus_jsonl(std::string_view text) {
    std::vector<Document> docs;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line.begin(), line.end());
        } catch (const nlohmann::json::parse_error& e) {
            bad_line(line_no, e.what());
        }
        if (!j.is_object() || !j.contains("id") || !j.contains("text") || !j["id"].is_string() ||
            !j["text"].is_string()) {
            bad_line(line_no, R"(expected {"id": string, "text": string})");
        }
        docs.push_back({checked_id(j["id"].get<std::string>(), line_no), j["text"].get<std::string>()});
    });
    return docs;
}

std::vector<Document> read_corpus(const std::string& path) {
    const auto text = detail::read_file(path);
    if (ends_with(path, ".jsonl") || ends_with(path, ".json")) return parse_corpus_jsonl(text);
    return parse_corpus_tsv(text);
}

std::vector<Query> parse_queries(std::string_view text) {
    std::vector<Query> queries;
    std::unordered_set<std::string> seen;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) bad_line(line_no, "expected 'qid<TAB>text'");
        std::string qid(detail::trim(line.substr(0, tab)));
        if (qid.empty()) bad_line(line_no, "empty query id");
        if (!seen.insert(qid).second) bad_line(line_no, "duplicate query id '" + qid + "'");
        queries.push_back({std::move(qid), std::string(line.substr(tab + 1)), std::nullopt});
    });
    return queries;
}

std::vector<Query> read_queries(const std::string& path) { return parse_queries(detail::read_file(path)); }

std::vector<std::pair<std::string, DenseVector>> parse_query_vectors(std::string_view text) {
    std::vector<std::pair<std::string, DenseVector>> out;
    std::unordered_set<std::string> seen;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) bad_line(line_no, "expected 'qid<TAB>f,f,...'");
        std::string qid(line.substr(0, tab));
        if (qid.empty()) bad_line(line_no, "empty query id");
        if (!seen.insert(qid).second) bad_line(line_no, "duplicate query id '" + qid + "'");
        std::vector<float> values;
        auto rest = line.substr(tab + 1);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            auto comma = rest.find(',', pos);
            if (comma == std::string_view::npos) comma = rest.size();
            const auto v = detail::parse_number<float>(detail::trim(rest.substr(pos, comma - pos)));
            if (!v) bad_line(line_no, "bad vector component");
            values.push_back(*v);
            pos = comma + 1;
        }
        if (!out.empty() && out.front().second.dim() != values.size()) {
            bad_line(line_no, "query vector dimension differs from the first line");
        }
        out.emplace_back(std::move(qid), DenseVector(std::move(values)));
    });
    return out;
}

std::vector<std::pair<std::string, DenseVector>> read_query_vectors(const std::string& path) {
    return parse_query_vectors(detail::read_file(path));
}

std::string format_query_vectors(const std::vector<std::pair<std::string, DenseVector>>& vectors) {
    std::string out;
    for (const auto& [qid, v] : vectors) {
        out += qid;
        out += '\t';
        for (std::size_t i = 0; i < v.dim(); ++i) {
            if (i) out += ',';
            out += detail::shortest(v[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace ff
