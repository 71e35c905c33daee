// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

// Text ingestion formats. All readers report the 1-based line number of the
// first malformed line in a FormatError.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fastforward/core.hpp"
#include "fastforward/sparse.hpp"

namespace ff {

/// `doc_id<TAB>text` per line.
std::vector<Document> parse_corpus_tsv(std::string_view text);
/// `{"id": "...", "text": "..."}` per line.
std::vector<Document> parse_corpus_jsonl(std::string_view text);
/// Picks JSONL for `.jsonl`/`.json` paths, TSV otherwise.
std::vector<Document> read_corpus(const std::string& path);

/// `qid<TAB>text` per line; duplicate qids are rejected.
std::vector<Query> parse_queries(std::string_view text);
std::vector<Query> read_queries(const std::string& path);

/// Query vectors, `qid<TAB>f,f,...` per line, as produced by external
/// encoders. Returns (qid, vector) in file order.
std::vector<std::pair<std::string, DenseVector>> parse_query_vectors(std::string_view text);
std::vector<std::pair<std::string, DenseVector>> read_query_vectors(const std::string& path);
std::string format_query_vectors(const std::vector<std::pair<std::string, DenseVector>>& vectors);

}  // namespace ff
