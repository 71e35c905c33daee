// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "fastforward/core.hpp"
#include "fastforward/error.hpp"

using namespace ff;

TEST_CASE("dot product") {
    CHECK(dot(DenseVector{1, 0}, DenseVector{0, 1}) == 0.0f);
    CHECK(dot(DenseVector{1, 2}, DenseVector{3, 4}) == 11.0f);
    CHECK(dot(DenseVector{0.6f, 0.8f}, DenseVector{0.6f, 0.8f}) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("dot product rejects mismatched dimensions and names both") {
    try {
        (void)dot(DenseVector{1, 2}, DenseVector{1, 2, 3});
        FAIL("expected an error");
    } catch (const DimensionMismatch& e) {
        const std::string msg = e.what();
        CHECK(msg.find('2') != std::string::npos);
        CHECK(msg.find('3') != std::string::npos);
        CHECK(e.code() == ErrorCode::dimension_mismatch);
    }
}

TEST_CASE("cosine distance") {
    CHECK(cosine_distance(DenseVector{1, 2, 3}, DenseVector{1, 2, 3}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cosine_distance(DenseVector{1, 0}, DenseVector{0, 1}) == 1.0);
    CHECK(cosine_distance(DenseVector{1, 0}, DenseVector{-1, 0}) == 2.0);
    CHECK_THROWS_AS((void)cosine_distance(DenseVector{1, 0}, DenseVector{1, 0, 0}), DimensionMismatch);
}

TEST_CASE("cosine distance stays in [0, 2]") {
    std::mt19937_64 rng(11);
    std::normal_distribution<float> g;
    for (int i = 0; i < 500; ++i) {
        std::vector<float> a(5), b(5);
        for (auto& x : a) x = g(rng);
        for (auto& x : b) x = g(rng);
        const double d = cosine_distance(DenseVector(a), DenseVector(b));
        CHECK(d >= 0.0);
        CHECK(d <= 2.0);
    }
}

TEST_CASE("maxp") {
    const std::vector<double> a{1.0, 5.0, 3.0}, b{2.0}, c{-1.0, -3.0};
    CHECK(maxp(a) == 5.0);
    CHECK(maxp(b) == 2.0);
    CHECK(maxp(c) == -1.0);
    CHECK_THROWS_AS((void)maxp(std::vector<double>{}), InvalidArgument);

    std::vector<double> p{0.3, -2.0, 7.5, 7.25, 1.0};
    const double expected = maxp(p);
    std::sort(p.begin(), p.end());
    do {
        CHECK(maxp(p) == expected);
    } while (std::next_permutation(p.begin(), p.end()));
}

TEST_CASE("dense vectors must be finite") {
    CHECK_THROWS_AS(DenseVector({1.0f, std::numeric_limits<float>::quiet_NaN()}), InvalidArgument);
    CHECK_THROWS_AS(DenseVector({std::numeric_limits<float>::infinity()}), InvalidArgument);
}

TEST_CASE("doc ids are non-empty and whitespace free") {
    CHECK_THROWS_AS(DocId(""), InvalidArgument);
    CHECK_THROWS_AS(DocId("a b"), InvalidArgument);
    CHECK_THROWS_AS(DocId("a\tb"), InvalidArgument);
    CHECK(DocId("doc-1").str() == "doc-1");
    CHECK(is_valid_doc_id("x"));
    CHECK_FALSE(is_valid_doc_id(""));
}

TEST_CASE("ranked list sorts by score then doc id") {
    RankedList list({{DocId("b"), 1.0}, {DocId("c"), 2.0}, {DocId("a"), 1.0}});
    REQUIRE(list.size() == 3);
    CHECK(list[0].doc.str() == "c");
    CHECK(list[1].doc.str() == "a");
    CHECK(list[2].doc.str() == "b");
    for (std::size_t i = 1; i < list.size(); ++i) CHECK(list[i - 1].score >= list[i].score);
    CHECK(list.truncated(2).size() == 2);
    CHECK(list.truncated(10).size() == 3);
}

TEST_CASE("ranked list rejects duplicates and non-finite scores") {
    CHECK_THROWS_AS(RankedList({{DocId("a"), 1.0}, {DocId("a"), 2.0}}), InvalidArgument);
    CHECK_THROWS_AS(RankedList({{DocId("a"), std::numeric_limits<double>::quiet_NaN()}}), InvalidArgument);
}

TEST_CASE("tokenizer lowercases and splits on punctuation") {
    CHECK(tokenize("Hello, World! x2") == std::vector<std::string>{"hello", "world", "x2"});
    CHECK(tokenize("  ").empty());
    CHECK(tokenize("caf\xc3\xa9 bar") == std::vector<std::string>{"caf\xc3\xa9", "bar"});
}

TEST_CASE("toy encoder") {
    CHECK(toy_encode("", 4, 0) == DenseVector::zeros(4));
    CHECK(toy_encode("some text here", 16, 3) == toy_encode("some text here", 16, 3));
    CHECK_THROWS_AS((void)toy_encode("a", 1, 0), InvalidArgument);

    // Values from an independent FNV-1a implementation: with seed 7, "a"
    // lands in bucket 1 and "b" in bucket 0 of 8.
    const auto v = toy_encode("a a b", 8, 7);
    CHECK(toy_hash("a", 7) == 12638186101044013785ULL);
    CHECK(toy_hash("b", 7) == 12638182802509129152ULL);
    CHECK(v[1] == 0.8944271802902222f);
    CHECK(v[0] == 0.4472135901451111f);
    int nonzero = 0;
    double norm = 0;
    for (float x : v.values()) {
        nonzero += x != 0.0f;
        norm += static_cast<double>(x) * x;
    }
    CHECK(nonzero <= 2);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("toy encoder seed changes buckets") {
    int differing = 0;
    for (std::uint64_t seed = 0; seed < 16; ++seed) differing += toy_encode("alpha", 64, seed) != toy_encode("alpha", 64, 0);
    CHECK(differing > 0);
}

TEST_CASE("warnings go to the installed sink") {
    std::string seen;
    set_warning_sink([&](std::string_view m) { seen = std::string(m); });
    warn("careful");
    set_warning_sink(nullptr);
    CHECK(seen == "careful");
}
