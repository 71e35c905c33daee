// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastforward/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "binary_io.hpp"
#include "numbers.hpp"

namespace ff {

namespace {

std::vector<std::string_view> fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        pos = line.find_first_not_of(" \t", pos);
        if (pos == std::string_view::npos) break;
        auto end = line.find_first_of(" \t", pos);
        if (end == std::string_view::npos) end = line.size();
        out.push_back(line.substr(pos, end - pos));
        pos = end;
    }
    return out;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn fn) {
    std::size_t pos = 0, line_no = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        ++line_no;
        const auto line = detail::trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        if (!line.empty()) fn(line, line_no);
    }
}

[[noreturn]] void bad_line(const char* what, std::size_t line_no, const std::string& detail) {
    throw FormatError(std::string(what) + " line " + std::to_string(line_no) + ": " + detail);
}

const Qrels::Judgments* judged_or_warn(const Qrels& qrels, std::string_view qid) {
    const auto* j = qrels.judgments(qid);
    if (!j) warn("no relevance judgments for query '" + std::string(qid) + "'");
    return j;
}

int grade_in(const Qrels::Judgments& j, const DocId& doc) {
    auto it = j.find(doc);
    return it == j.end() ? 0 : it->second;
}

std::size_t relevant_count(const Qrels::Judgments& j, int binarize_at) {
    return static_cast<std::size_t>(
        std::count_if(j.begin(), j.end(), [&](const auto& kv) { return kv.second >= binarize_at; }));
}

}  // namespace

void Qrels::add(const std::string& qid, const DocId& doc, int grade) {
    if (qid.empty()) throw InvalidArgument("empty query id");
    if (grade < 0) throw InvalidArgument("negative relevance grade");
    if (!by_query_[qid].emplace(doc, grade).second) {
        throw InvalidArgument("repeated judgment for (" + qid + ", " + doc.str() + ")");
    }
}

int Qrels::grade(std::string_view qid, const DocId& doc) const {
    const auto* j = judgments(qid);
    return j ? grade_in(*j, doc) : 0;
}

const Qrels::Judgments* Qrels::judgments(std::string_view qid) const {
    auto it = by_query_.find(qid);
    return it == by_query_.end() ? nullptr : &it->second;
}

Qrels Qrels::parse(std::string_view text) {
    Qrels qrels;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        const auto f = fields(line);
        if (f.size() != 4) bad_line("qrels", line_no, "expected 'qid 0 docid grade'");
        const auto grade = detail::parse_number<int>(f[3]);
        if (!grade) bad_line("qrels", line_no, "grade is not an integer");
        try {
            qrels.add(std::string(f[0]), DocId(std::string(f[2])), *grade);
        } catch (const InvalidArgument& e) {
            bad_line("qrels", line_no, e.what());
        }
    });
    return qrels;
}

Qrels Qrels::load(const std::string& path) { return parse(detail::read_file(path)); }

const RankedList* Run::find(std::string_view qid) const {
    auto it = by_query_.find(qid);
    return it == by_query_.end() ? nullptr : &it->second;
}

std::vector<std::string> Run::query_ids() const {
    std::vector<std::string> ids;
    ids.reserve(by_query_.size());
    for (const auto& [qid, _] : by_query_) ids.push_back(qid);
    return ids;
}

std::string Run::to_trec() const {
    std::string out;
    for (const auto& c : comments) {
        out += "# ";
        out += c;
        out += '\n';
    }
    for (const auto& [qid, hits] : by_query_) {
        std::size_t rank = 0;
        for (const auto& h : hits) {
            out += qid;
            out += " Q0 ";
            out += h.doc.str();
            out += ' ';
            out += std::to_string(++rank);
            out += ' ';
            out += detail::shortest(h.score);
            out += ' ';
            out += tag;
            out += '\n';
        }
    }
    return out;
}

void Run::save(const std::string& path) const { detail::write_file(path, to_trec()); }

Run Run::parse(std::string_view text) {
    struct Row {
        std::size_t rank;
        ScoredDoc hit;
        std::size_t line_no;
    };
    std::map<std::string, std::vector<Row>, std::less<>> rows;
    Run run;
    bool tag_seen = false;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        if (line.front() == '#') {
            run.comments.push_back(std::string(detail::trim(line.substr(1))));
            return;
        }
        const auto f = fields(line);
        if (f.size() != 6) bad_line("run", line_no, "expected 'qid Q0 docid rank score tag'");
        const auto rank = detail::parse_number<std::size_t>(f[3]);
        if (!rank || *rank == 0) bad_line("run", line_no, "rank must be a positive integer");
        const auto score = detail::parse_number<double>(f[4]);
        if (!score) bad_line("run", line_no, "score is not a finite number");
        if (!tag_seen) {
            run.tag = std::string(f[5]);
            tag_seen = true;
        }
        rows[std::string(f[0])].push_back({*rank, {DocId(std::string(f[2])), *score}, line_no});
    });
    for (auto& [qid, list] : rows) {
        std::sort(list.begin(), list.end(), [](const Row& a, const Row& b) { return a.rank < b.rank; });
        std::vector<ScoredDoc> hits;
        hits.reserve(list.size());
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (list[i].rank != i + 1) bad_line("run", list[i].line_no, "ranks of '" + qid + "' are not 1..n");
            if (i > 0 && list[i].hit.score > list[i - 1].hit.score) {
                bad_line("run", list[i].line_no, "scores of '" + qid + "' increase with rank");
            }
            hits.push_back(std::move(list[i].hit));
        }
        try {
            run.by_query_.emplace(qid, RankedList(std::move(hits)));
        } catch (const InvalidArgument& e) {
            throw FormatError("run query '" + qid + "': " + e.what());
        }
    }
    return run;
}

Run Run::load(const std::string& path) { return parse(detail::read_file(path)); }

double ndcg_at(const RankedList& run, const Qrels& qrels, std::string_view qid, std::size_t k) {
    if (k == 0) throw InvalidArgument("metric depth must be >= 1");
    const auto* j = judged_or_warn(qrels, qid);
    if (!j) return 0.0;
    double dcg = 0.0;
    for (std::size_t i = 0; i < std::min(k, run.size()); ++i) {
        const int g = grade_in(*j, run[i].doc);
        dcg += (std::exp2(g) - 1.0) / std::log2(static_cast<double>(i) + 2.0);
    }
    std::vector<int> grades;
    for (const auto& [_, g] : *j) grades.push_back(g);
    std::sort(grades.begin(), grades.end(), std::greater<>());
    double idcg = 0.0;
    for (std::size_t i = 0; i < std::min(k, grades.size()); ++i) {
        idcg += (std::exp2(grades[i]) - 1.0) / std::log2(static_cast<double>(i) + 2.0);
    }
    return idcg > 0.0 ? dcg / idcg : 0.0;
}

double ap_at(const RankedList& run, const Qrels& qrels, std::string_view qid, std::size_t k, int binarize_at) {
    if (k == 0) throw InvalidArgument("metric depth must be >= 1");
    const auto* j = judged_or_warn(qrels, qid);
    if (!j) return 0.0;
    const auto total = relevant_count(*j, binarize_at);
    if (total == 0) return 0.0;
    double sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < std::min(k, run.size()); ++i) {
        if (grade_in(*j, run[i].doc) >= binarize_at) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(total);
}

double recall_at(const RankedList& run, const Qrels& qrels, std::string_view qid, std::size_t k, int binarize_at) {
    if (k == 0) throw InvalidArgument("metric depth must be >= 1");
    const auto* j = judged_or_warn(qrels, qid);
    if (!j) return 0.0;
    const auto total = relevant_count(*j, binarize_at);
    if (total == 0) return 0.0;
    std::size_t found = 0;
    for (std::size_t i = 0; i < std::min(k, run.size()); ++i) {
        if (grade_in(*j, run[i].doc) >= binarize_at) ++found;
    }
    return static_cast<double>(found) / static_cast<double>(total);
}

double rr_at(const RankedList& run, const Qrels& qrels, std::string_view qid, std::size_t k, int binarize_at) {
    if (k == 0) throw InvalidArgument("metric depth must be >= 1");
    const auto* j = judged_or_warn(qrels, qid);
    if (!j) return 0.0;
    for (std::size_t i = 0; i < std::min(k, run.size()); ++i) {
        if (grade_in(*j, run[i].doc) >= binarize_at) return 1.0 / static_cast<double>(i + 1);
    }
    return 0.0;
}

Metric Metric::parse(std::string_view spec) {
    const auto at = spec.find('@');
    if (at == std::string_view::npos) throw InvalidArgument("metric '" + std::string(spec) + "' needs a depth, e.g. ndcg@10");
    Metric m;
    const auto name = spec.substr(0, at);
    if (name == "ndcg") {
        m.kind = Kind::ndcg;
    } else if (name == "ap" || name == "map") {
        m.kind = Kind::ap;
    } else if (name == "recall") {
        m.kind = Kind::recall;
    } else if (name == "rr" || name == "mrr") {
        m.kind = Kind::rr;
    } else {
        throw InvalidArgument("unknown metric '" + std::string(name) + "'");
    }
    const auto k = detail::parse_number<std::size_t>(spec.substr(at + 1));
    if (!k || *k == 0) throw InvalidArgument("bad metric depth in '" + std::string(spec) + "'");
    m.k = *k;
    return m;
}

std::vector<Metric> Metric::parse_list(std::string_view comma_separated) {
    std::vector<Metric> out;
    std::size_t pos = 0;
    while (pos <= comma_separated.size()) {
        auto comma = comma_separated.find(',', pos);
        if (comma == std::string_view::npos) comma = comma_separated.size();
        const auto item = detail::trim(comma_separated.substr(pos, comma - pos));
        if (!item.empty()) out.push_back(parse(item));
        pos = comma + 1;
    }
    if (out.empty()) throw InvalidArgument("no metrics given");
    return out;
}

std::string Metric::name() const {
    const char* base = "ndcg";
    switch (kind) {
        case Kind::ndcg: base = "ndcg"; break;
        case Kind::ap: base = "ap"; break;
        case Kind::recall: base = "recall"; break;
        case Kind::rr: base = "rr"; break;
    }
    return std::string(base) + "@" + std::to_string(k);
}

double Metric::compute(const RankedList& run, const Qrels& qrels, std::string_view qid) const {
    switch (kind) {
        case Kind::ndcg: return ndcg_at(run, qrels, qid, k);
        case Kind::ap: return ap_at(run, qrels, qid, k, binarize_at);
        case Kind::recall: return recall_at(run, qrels, qid, k, binarize_at);
        case Kind::rr: return rr_at(run, qrels, qid, k, binarize_at);
    }
    return 0.0;
}

EvalReport evaluate(const Run& run, const Qrels& qrels, std::span<const Metric> metrics) {
    EvalReport report;
    report.metrics.assign(metrics.begin(), metrics.end());
    report.means.assign(metrics.size(), 0.0);
    for (const auto& [qid, hits] : run.queries()) {
        std::vector<double> row;
        row.reserve(metrics.size());
        // Warn once per query rather than once per metric.
        if (!qrels.judgments(qid)) {
            warn("no relevance judgments for query '" + qid + "'");
            row.assign(metrics.size(), 0.0);
        } else {
            for (const auto& m : metrics) row.push_back(m.compute(hits, qrels, qid));
        }
        for (std::size_t i = 0; i < row.size(); ++i) report.means[i] += row[i];
        report.qids.push_back(qid);
        report.per_query.push_back(std::move(row));
    }
    if (!report.qids.empty()) {
        for (auto& m : report.means) m /= static_cast<double>(report.qids.size());
    }
    return report;
}

std::string EvalReport::table(bool per_query_rows) const {
    std::string out;
    char buf[64];
    auto line = [&](const Metric& m, const std::string& qid, double v) {
        std::snprintf(buf, sizeof buf, "%.5f", v);
        out += m.name();
        out += '\t';
        out += qid;
        out += '\t';
        out += buf;
        out += '\n';
    };
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        if (per_query_rows) {
            for (std::size_t q = 0; q < qids.size(); ++q) line(metrics[i], qids[q], per_query[q][i]);
        }
        line(metrics[i], "all", means[i]);
    }
    return out;
}

}  // namespace ff
