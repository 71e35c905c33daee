// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "fastforward/error.hpp"
#include "fastforward/eval.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

using namespace ff;

namespace {

std::string data(const std::string& name) { return std::string(FF_TEST_DATA_DIR) + "/" + name; }

RankedList ranked(std::initializer_list<const char*> docs) {
    std::vector<ScoredDoc> out;
    double s = 100;
    for (const char* d : docs) out.push_back({DocId(d), s--});
    return RankedList(std::move(out));
}

}  // namespace

TEST_CASE("nDCG on the graded fixture") {
    Qrels q;
    q.add("q", DocId("a"), 3);
    q.add("q", DocId("b"), 0);
    q.add("q", DocId("c"), 1);
    CHECK(ndcg_at(ranked({"a", "b", "c"}), q, "q", 3) == doctest::Approx(0.98284).epsilon(1e-4));
    CHECK(ndcg_at(ranked({"a", "c", "b"}), q, "q", 3) == doctest::Approx(1.0));

    Qrels none;
    none.add("q", DocId("a"), 0);
    CHECK(ndcg_at(ranked({"a"}), none, "q", 10) == 0.0);
}

TEST_CASE("average precision") {
    Qrels q;
    q.add("q", DocId("x"), 1);
    q.add("q", DocId("y"), 1);
    CHECK(ap_at(ranked({"x", "y"}), q, "q", 10) == 1.0);
    CHECK(ap_at(ranked({"n", "x"}), q, "q", 10) == doctest::Approx(0.25));
    CHECK(ap_at(ranked({"n", "m", "x"}), q, "q", 2) == 0.0);
}

TEST_CASE("recall and reciprocal rank") {
    Qrels q;
    q.add("q", DocId("r"), 2);
    q.add("q", DocId("s"), 1);
    CHECK(rr_at(ranked({"a", "b", "r"}), q, "q", 10) == doctest::Approx(1.0 / 3));
    CHECK(rr_at(ranked({"a", "b", "r"}), q, "q", 2) == 0.0);
    CHECK(recall_at(ranked({"s", "r", "z"}), q, "q", 10) == 1.0);
    CHECK(recall_at(ranked({"s", "z", "r"}), q, "q", 2) == 0.5);
    CHECK(recall_at(ranked({"s", "z", "r"}), q, "q", 2, 2) == 0.0);
}

TEST_CASE("unknown query scores zero with a warning") {
    Qrels q;
    q.add("q", DocId("a"), 1);
    std::string warned;
    set_warning_sink([&](std::string_view m) { warned = std::string(m); });
    CHECK(ndcg_at(ranked({"a"}), q, "other", 10) == 0.0);
    set_warning_sink(nullptr);
    CHECK(warned.find("other") != std::string::npos);
}

TEST_CASE("five-query fixture matches the reference evaluator") {
    // means from tests/oracles/trec_metrics.py
    const auto run = Run::load(data("five.run"));
    const auto qrels = Qrels::load(data("five.qrels"));
    const auto metrics = Metric::parse_list("ndcg@3,ndcg@10,ap@1000,ap@2,recall@3,recall@1000,rr@10,rr@2");
    const auto report = evaluate(run, qrels, metrics);
    const std::vector<double> expected{0.3302642167, 0.3463021496, 0.3344444444, 0.1666666667,
                                       0.3833333333, 0.4333333333, 0.4666666667, 0.4000000000};
    REQUIRE(report.means.size() == expected.size());
    for (std::size_t m = 0; m < expected.size(); ++m) {
        CHECK(report.means[m] == doctest::Approx(expected[m]).epsilon(1e-9));
    }
    CHECK(report.qids.size() == 5);
    CHECK(report.per_query[4][1] == doctest::Approx(0.9458462366).epsilon(1e-9));
}

TEST_CASE("metrics stay within [0, 1] and ignore order below the cut") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
        Qrels q;
        oracle::Judged judged;
        for (int d = 0; d < 15; ++d) {
            if (rng() % 2) {
                const int g = static_cast<int>(rng() % 4);
                q.add("q", DocId(testing::doc_name(d)), g);
                judged[testing::doc_name(d)] = g;
            }
        }
        std::vector<std::string> order;
        for (int d = 0; d < 15; ++d) order.push_back(testing::doc_name(d));
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<ScoredDoc> list;
        for (std::size_t i = 0; i < order.size(); ++i) list.push_back({DocId(order[i]), 100.0 - static_cast<double>(i)});
        const RankedList run(list);
        const std::size_t k = 1 + rng() % 10;
        for (auto kind : {Metric::Kind::ndcg, Metric::Kind::ap, Metric::Kind::recall, Metric::Kind::rr}) {
            const Metric m{kind, k, 1};
            const double v = m.compute(run, q, "q");
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            auto tail = order;
            std::shuffle(tail.begin() + static_cast<long>(k), tail.end(), rng);
            std::vector<ScoredDoc> permuted;
            for (std::size_t i = 0; i < tail.size(); ++i) permuted.push_back({DocId(tail[i]), 100.0 - static_cast<double>(i)});
            CHECK(m.compute(RankedList(permuted), q, "q") == v);
        }
        CHECK(ndcg_at(run, q, "q", k) == doctest::Approx(oracle::ndcg(order, judged, k)).epsilon(1e-12));
        CHECK(ap_at(run, q, "q", k) == doctest::Approx(oracle::ap(order, judged, k)).epsilon(1e-12));
        CHECK(recall_at(run, q, "q", k) == doctest::Approx(oracle::recall(order, judged, k)).epsilon(1e-12));
        CHECK(rr_at(run, q, "q", k) == doctest::Approx(oracle::rr(order, judged, k)).epsilon(1e-12));
    }
}

TEST_CASE("moving a relevant document up never hurts") {
    Qrels q;
    q.add("q", DocId("r"), 2);
    q.add("q", DocId("s"), 1);
    const auto low = ranked({"a", "s", "b", "r"});
    const auto high = ranked({"a", "s", "r", "b"});
    CHECK(ndcg_at(high, q, "q", 10) >= ndcg_at(low, q, "q", 10));
    CHECK(ap_at(high, q, "q", 10) >= ap_at(low, q, "q", 10));
    CHECK(rr_at(high, q, "q", 10) >= rr_at(low, q, "q", 10));
}

TEST_CASE("metric names") {
    CHECK(Metric::parse("ndcg@10").name() == "ndcg@10");
    CHECK(Metric::parse("map@1000").kind == Metric::Kind::ap);
    CHECK(Metric::parse("mrr@10").kind == Metric::Kind::rr);
    CHECK(Metric::parse("recall@1000").k == 1000);
    CHECK_THROWS_AS(Metric::parse("ndcg"), InvalidArgument);
    CHECK_THROWS_AS(Metric::parse("foo@3"), InvalidArgument);
    CHECK_THROWS_AS(Metric::parse("ndcg@0"), InvalidArgument);
}

TEST_CASE("qrels parsing") {
    const auto q = Qrels::parse("q1 0 d1 2\nq1 0 d2 0\n\nq2 0 d1 1\n");
    CHECK(q.query_count() == 2);
    CHECK(q.grade("q1", DocId("d1")) == 2);
    CHECK(q.grade("q1", DocId("d9")) == 0);
    CHECK_THROWS_AS(Qrels::parse("q1 0 d1 -1\n"), FormatError);
    CHECK_THROWS_AS(Qrels::parse("q1 0 d1 1\nq1 0 d1 2\n"), FormatError);
    CHECK_THROWS_AS(Qrels::parse("q1 0 d1\n"), FormatError);
}

TEST_CASE("run files round-trip") {
    Run run;
    run.tag = "sys";
    run.comments.push_back("hello");
    run.set("q2", RankedList({{DocId("a"), 0.1}, {DocId("b"), 1.0 / 3}}));
    run.set("q1", RankedList({{DocId("c"), 5}}));
    const auto text = run.to_trec();
    CHECK(text == "# hello\nq1 Q0 c 1 5 sys\nq2 Q0 b 1 0.3333333333333333 sys\nq2 Q0 a 2 0.1 sys\n");
    const auto back = Run::parse(text);
    CHECK(back.to_trec() == text);
    CHECK(back.find("q2")->size() == 2);
}

TEST_CASE("run file invariants are enforced") {
    CHECK_THROWS_AS(Run::parse("q Q0 a 1 1 t\nq Q0 b 3 0.5 t\n"), FormatError);
    CHECK_THROWS_AS(Run::parse("q Q0 a 1 1 t\nq Q0 b 2 2 t\n"), FormatError);
    CHECK_THROWS_AS(Run::parse("q Q0 a 1 t\n"), FormatError);
    CHECK_THROWS_AS(Run::parse("q Q0 a x 1 t\n"), FormatError);
}

TEST_CASE("report table") {
    const auto run = Run::load(data("grades.run"));
    const auto qrels = Qrels::load(data("grades.qrels"));
    const auto report = evaluate(run, qrels, Metric::parse_list("ndcg@3"));
    CHECK(report.table() == "ndcg@3\tall\t0.98284\n");
    CHECK(report.table(true) == "ndcg@3\tq\t0.98284\nndcg@3\tall\t0.98284\n");
}
