// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <chrono>
#include <cstring>
#include <random>

#include "fastforward/error.hpp"
#include "fastforward/forward.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

using namespace ff;

namespace {

struct RandomIndex {
    ForwardIndex index;
    std::map<std::string, std::vector<std::vector<float>>> raw;
};

RandomIndex random_index(std::mt19937_64& rng, std::size_t docs, std::size_t dim, std::size_t max_passages) {
    RandomIndex r;
    std::vector<ForwardIndex::Entry> entries;
    for (std::size_t i = 0; i < docs; ++i) {
        ForwardIndex::Entry e{DocId(testing::doc_name(i)), {}};
        const std::size_t n = 1 + rng() % max_passages;
        for (std::size_t p = 0; p < n; ++p) {
            auto v = testing::random_vector(rng, dim);
            r.raw[e.id.str()].push_back(v);
            e.passages.emplace_back(std::move(v));
        }
        entries.push_back(std::move(e));
    }
    r.index = ForwardIndex::build(std::move(entries));
    return r;
}

bool bitwise_equal(std::span<const float> a, const std::vector<float>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), b.size() * sizeof(float)) == 0;
}

}  // namespace

TEST_CASE("construction") {
    std::vector<ForwardIndex::Entry> entries{{DocId("d1"), {{1, 2, 3, 4}, {5, 6, 7, 8}, {9, 10, 11, 12}}}};
    const auto index = ForwardIndex::build(entries);
    CHECK(index.dimension() == 4);
    CHECK(index.doc_count() == 1);
    CHECK(index.lookup(DocId("d1")).size() == 3);
    CHECK(index.vector_count() == 3);
}

TEST_CASE("build preconditions") {
    CHECK_THROWS_AS(ForwardIndex::build({{DocId("a"), {{1, 2, 3, 4}}}, {DocId("b"), {{1, 2, 3, 4, 5, 6, 7, 8}}}}),
                    DimensionMismatch);
    CHECK_THROWS_AS(ForwardIndex::build({{DocId("a"), {{1, 2}}}, {DocId("a"), {{3, 4}}}}), InvalidArgument);
    CHECK_THROWS_AS(ForwardIndex::build({{DocId("a"), {}}}), InvalidArgument);
    CHECK_THROWS_AS(ForwardIndex::build({}), InvalidArgument);
}

TEST_CASE("lookup returns passages in original order") {
    const auto index = ForwardIndex::build({{DocId("d"), {{1, 0}, {0, 1}, {2, 2}}}, {DocId("e"), {{3, 3}}}});
    const auto view = index.lookup(DocId("d"));
    REQUIRE(view.size() == 3);
    CHECK(view[0][0] == 1.0f);
    CHECK(view[1][1] == 1.0f);
    CHECK(view[2][0] == 2.0f);
    const auto again = index.lookup(DocId("d"));
    CHECK(again.data().data() == view.data().data());
    CHECK_THROWS_AS((void)index.lookup(DocId("zzz")), MissingDocument);
    CHECK_FALSE(index.find(DocId("zzz")).has_value());
}

TEST_CASE("dense score is maxP over passages") {
    const auto index = ForwardIndex::build({{DocId("d"), {{1, 0}, {0, 1}}}, {DocId("s"), {{0.5f, 0.25f}}}});
    CHECK(index.dense_score(DenseVector{2, 1}, DocId("d")) == 2.0);
    CHECK(index.dense_score(DenseVector{2, 1}, DocId("s")) == 1.25);
    CHECK_THROWS_AS((void)index.dense_score(DenseVector{2, 1}, DocId("nope")), MissingDocument);
    CHECK_THROWS_AS((void)index.dense_score(DenseVector{2, 1, 0}, DocId("d")), DimensionMismatch);
}

TEST_CASE("dense score equals brute-force recomputation") {
    std::mt19937_64 rng(17);
    const auto r = random_index(rng, 100, 12, 5);
    for (int q = 0; q < 10; ++q) {
        const auto query = testing::random_vector(rng, 12);
        for (const auto& [id, passages] : r.raw) {
            CHECK(r.index.dense_score(query, DocId(id)) == oracle::max_dot(passages, query));
        }
    }
}

TEST_CASE("dense top-k") {
    std::mt19937_64 rng(23);
    const auto r = random_index(rng, 50, 8, 3);
    const auto query = testing::random_vector(rng, 8);
    CHECK(r.index.dense_topk(query, 500).size() == 50);

    std::vector<oracle::Hit> all;
    for (const auto& [id, passages] : r.raw) all.emplace_back(id, oracle::max_dot(passages, query));
    const auto want = oracle::sorted(all, 10);
    const auto got = r.index.dense_topk(query, 10);
    REQUIRE(got.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(got[i].doc.str() == want[i].first);
        CHECK(got[i].score == want[i].second);
    }
}

TEST_CASE("self-similar passage ranks first") {
    const auto index = ForwardIndex::build(
        {{DocId("a"), {{0, 1, 0}}}, {DocId("b"), {{0, 0, 1}, {1, 0, 0}}}, {DocId("c"), {{0, 0, 1}}}});
    const auto hits = index.dense_topk(DenseVector{1, 0, 0}, 3);
    CHECK(hits[0].doc.str() == "b");
}

TEST_CASE("binary round-trip is bitwise exact") {
    testing::TempDir dir;
    std::mt19937_64 rng(29);
    const auto r = random_index(rng, 200, 16, 4);
    r.index.save(dir.file("f.ffi"));
    const auto back = ForwardIndex::load(dir.file("f.ffi"));
    CHECK(back.dimension() == 16);
    CHECK(back.doc_count() == 200);
    for (const auto& [id, passages] : r.raw) {
        const auto view = back.lookup(DocId(id));
        REQUIRE(view.size() == passages.size());
        for (std::size_t p = 0; p < passages.size(); ++p) CHECK(bitwise_equal(view[p], passages[p]));
        CHECK(back.byte_offset(DocId(id)) == r.index.byte_offset(DocId(id)));
    }
    CHECK(back.serialize() == r.index.serialize());
}

TEST_CASE("binary layout header") {
    const auto index = ForwardIndex::build({{DocId("ab"), {{1.5f, -2.0f}}}});
    const auto bytes = index.serialize();
    CHECK(bytes.substr(0, 4) == "FFWD");
    std::uint32_t version = 0, dim = 0;
    std::uint64_t count = 0;
    std::memcpy(&version, bytes.data() + 4, 4);
    CHECK(static_cast<unsigned char>(bytes[8]) == 1);
    std::memcpy(&dim, bytes.data() + 9, 4);
    std::memcpy(&count, bytes.data() + 13, 8);
    CHECK(version == 1);
    CHECK(dim == 2);
    CHECK(count == 1);
    // first record: id length, id, passage count, floats
    std::uint16_t id_len = 0;
    std::memcpy(&id_len, bytes.data() + 21, 2);
    CHECK(id_len == 2);
    CHECK(bytes.substr(23, 2) == "ab");
    CHECK(index.byte_offset(DocId("ab")) == 21);
    float first = 0;
    std::memcpy(&first, bytes.data() + 29, 4);
    CHECK(first == 1.5f);
    std::uint64_t table = 0;
    std::memcpy(&table, bytes.data() + bytes.size() - 8, 8);
    CHECK(table == 37);
}

TEST_CASE("corrupt binary files are format errors") {
    const auto index = ForwardIndex::build({{DocId("a"), {{1, 2}}}, {DocId("b"), {{3, 4}}}});
    const auto bytes = index.serialize();
    CHECK_THROWS_AS(ForwardIndex::deserialize(bytes.substr(0, 10)), FormatError);
    CHECK_THROWS_AS(ForwardIndex::deserialize(bytes.substr(0, bytes.size() - 1)), FormatError);
    auto wrong_magic = bytes;
    wrong_magic[1] = 'X';
    CHECK_THROWS_AS(ForwardIndex::deserialize(wrong_magic), FormatError);
    auto wrong_tag = bytes;
    wrong_tag[8] = 2;
    CHECK_THROWS_AS(ForwardIndex::deserialize(wrong_tag), FormatError);
    CHECK_THROWS_AS(ForwardIndex::load("/nonexistent/f.ffi"), IoError);
}

TEST_CASE("lookup time does not grow with index size") {
    std::mt19937_64 rng(31);
    const auto small = random_index(rng, 100, 4, 1);
    const auto large = random_index(rng, 20000, 4, 1);
    auto time_lookups = [](const ForwardIndex& index, std::size_t docs) {
        double sink = 0;
        const auto start = std::chrono::steady_clock::now();
        for (int rep = 0; rep < 20000; ++rep) sink += index.lookup(DocId(testing::doc_name(rep % docs)))[0][0];
        const auto ns = std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - start).count();
        return ns + sink * 0.0;
    };
    time_lookups(large.index, 20000);
    const double t_small = time_lookups(small.index, 100);
    const double t_large = time_lookups(large.index, 20000);
    // 200x more documents; a linear scan would be ~200x slower
    CHECK(t_large < 20.0 * t_small);
}

TEST_CASE("interchange round-trip") {
    std::mt19937_64 rng(37);
    const auto r = random_index(rng, 30, 6, 3);
    const auto text = r.index.to_interchange();
    const auto back = ForwardIndex::from_interchange(text);
    CHECK(back.serialize() == r.index.serialize());
}

TEST_CASE("interchange errors carry line numbers") {
    const std::string good = R"({"id": "a", "passages": [[1.0, 2.0]]})";
    CHECK(ForwardIndex::from_interchange(good + "\n").doc_count() == 1);
    auto line_of = [](const std::string& text) -> std::string {
        try {
            (void)ForwardIndex::from_interchange(text);
        } catch (const FormatError& e) {
            return e.what();
        }
        return "";
    };
    CHECK(line_of(good + "\n{oops\n").find("line 2") != std::string::npos);
    CHECK(line_of(good + "\n" + R"({"id": "b", "passages": [[1.0]]})" + "\n").find("line 2") != std::string::npos);
    CHECK(line_of(R"({"id": "b", "passages": []})").find("line 1") != std::string::npos);
    CHECK(line_of(R"({"id": "b", "passages": [[1.0]], "x": 1})").find("line 1") != std::string::npos);
    CHECK(line_of(R"({"passages": [[1.0]]})").find("line 1") != std::string::npos);
}

TEST_CASE("passage splitting") {
    std::string text;
    for (int i = 0; i < 450; ++i) text += "w" + std::to_string(i) + " ";
    const auto passages = split_passages(text, 200, 200);
    REQUIRE(passages.size() == 3);
    CHECK(passages[0].rfind("w0 ", 0) == 0);
    CHECK(passages[1].rfind("w200 ", 0) == 0);
    CHECK(passages[2].rfind("w400 ", 0) == 0);
    CHECK(split_passages("short text").size() == 1);
    CHECK(split_passages("").size() == 1);
}

TEST_CASE("toy corpus encoding") {
    const std::vector<Document> corpus{{DocId("a"), "one two"}, {DocId("b"), "three"}};
    const auto index = encode_corpus_toy(corpus, 16, 3);
    CHECK(index.doc_count() == 2);
    CHECK(index.dimension() == 16);
    const auto expected = toy_encode("one two", 16, 3);
    const auto view = index.lookup(DocId("a"));
    for (std::size_t i = 0; i < 16; ++i) CHECK(view[0][i] == expected[i]);
}
