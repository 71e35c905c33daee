// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fastforward/core.hpp"

namespace ff {

/// Graded relevance judgments, TREC format `qid 0 docid grade`.
class Qrels {
public:
    using Judgments = std::unordered_map<DocId, int>;

    /// Throws InvalidArgument on negative grades or repeated pairs.
    void add(const std::string& qid, const DocId& doc, int grade);

    /// 0 for unjudged pairs.
    int grade(std::string_view qid, const DocId& doc) const;
    /// nullptr for unknown queries.
    const Judgments* judgments(std::string_view qid) const;
    std::size_t query_count() const noexcept { return by_query_.size(); }

    static Qrels parse(std::string_view text);
    static Qrels load(const std::string& path);

private:
    std::map<std::string, Judgments, std::less<>> by_query_;
};

/// System output, TREC format `qid Q0 docid rank score tag`. Lines starting
/// with '#' are comments.
class Run {
public:
    std::string tag = "fastforward";
    std::vector<std::string> comments;

    void set(const std::string& qid, RankedList hits) { by_query_[qid] = std::move(hits); }
    const RankedList* find(std::string_view qid) const;
    /// Query ids in ascending order.
    std::vector<std::string> query_ids() const;
    const std::map<std::string, RankedList, std::less<>>& queries() const noexcept { return by_query_; }

    std::string to_trec() const;
    void save(const std::string& path) const;
    static Run parse(std::string_view text);
    static Run load(const std::string& path);

private:
    std::map<std::string, RankedList, std::less<>> by_query_;
};

/// nDCG@k with gain 2^rel - 1 and discount log2(rank + 1).
double ndcg_at(const RankedList& run, const Qrels& qrels, std::string_view qid, std::size_t k);
/// Average precision within depth k over all relevant documents (grade >= binarize_at).
double ap_at(const RankedList& run, const Qrels& qrels, std::string_view qid, std::size_t k, int binarize_at = 1);
double recall_at(const RankedList& run, const Qrels& qrels, std::string_view qid, std::size_t k, int binarize_at = 1);
/// Reciprocal rank of the first relevant document within depth k.
double rr_at(const RankedList& run, const Qrels& qrels, std::string_view qid, std::size_t k, int binarize_at = 1);

struct Metric {
    enum class Kind { ndcg, ap, recall, rr };
    Kind kind = Kind::ndcg;
    std::size_t k = 10;
    int binarize_at = 1;

    /// "ndcg@10", "ap@1000", "recall@100", "rr@10".
    static Metric parse(std::string_view spec);
    static std::vector<Metric> parse_list(std::string_view comma_separated);
    std::string name() const;
    double compute(const RankedList& run, const Qrels& qrels, std::string_view qid) const;
};

struct EvalReport {
    std::vector<Metric> metrics;
    std::vector<std::string> qids;
    std::vector<std::vector<double>> per_query;  // [query][metric]
    std::vector<double> means;                   // [metric]

    /// trec_eval style lines: `metric<TAB>qid|all<TAB>value`.
    std::string table(bool per_query_rows = false) const;
};

/// Evaluates every query in the run. Queries without judgments score 0 and
/// emit a warning.
EvalReport evaluate(const Run& run, const Qrels& qrels, std::span<const Metric> metrics);

}  // namespace ff
