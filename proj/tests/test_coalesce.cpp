// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "fastforward/coalesce.hpp"
#include "fastforward/error.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

using namespace ff;

namespace {

std::vector<DenseVector> random_passages(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
    std::vector<DenseVector> out;
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(testing::random_vector(rng, dim));
    return out;
}

/// Replays the split decisions of a partition: each output is the float mean
/// of its run, and a run ends exactly where the next vector is at least delta
/// away from the running mean.
void check_partition(std::span<const DenseVector> input, const CoalescedPassages& out, double delta) {
    REQUIRE(out.vectors.size() == out.run_starts.size());
    REQUIRE(!out.run_starts.empty());
    CHECK(out.run_starts[0] == 0);
    for (std::size_t r = 0; r < out.run_starts.size(); ++r) {
        const std::size_t begin = out.run_starts[r];
        const std::size_t end = r + 1 < out.run_starts.size() ? out.run_starts[r + 1] : input.size();
        REQUIRE(begin < end);
        const std::size_t dim = input[0].dim();
        std::vector<double> sum(dim, 0.0);
        for (std::size_t i = begin; i < end; ++i) {
            if (i > begin) {
                std::vector<double> mean(dim);
                for (std::size_t j = 0; j < dim; ++j) mean[j] = static_cast<double>(static_cast<float>(sum[j] / (i - begin)));
                const std::vector<float> v(input[i].values().begin(), input[i].values().end());
                CHECK(oracle::cosine_distance(mean, v) < delta);
            }
            for (std::size_t j = 0; j < dim; ++j) sum[j] += input[i][j];
        }
        for (std::size_t j = 0; j < dim; ++j) {
            CHECK(out.vectors[r][j] == static_cast<float>(sum[j] / static_cast<double>(end - begin)));
        }
        if (end < input.size()) {
            std::vector<double> mean(dim);
            for (std::size_t j = 0; j < dim; ++j) mean[j] = static_cast<double>(out.vectors[r][j]);
            const std::vector<float> v(input[end].values().begin(), input[end].values().end());
            CHECK(oracle::cosine_distance(mean, v) >= delta);
        }
    }
}

}  // namespace

TEST_CASE("singleton input") {
    const std::vector<DenseVector> one{{0.25f, -3.0f}};
    for (double delta : {0.0, 0.5, 5.0}) {
        const auto out = coalesce_passages(one, {delta});
        REQUIRE(out.vectors.size() == 1);
        CHECK(out.vectors[0] == one[0]);
    }
}

TEST_CASE("delta zero keeps every vector") {
    std::mt19937_64 rng(3);
    const auto input = random_passages(rng, 20, 5);
    const auto out = coalesce_passages(input, {0.0});
    CHECK(out.vectors == input);
}

TEST_CASE("hand trace") {
    const std::vector<DenseVector> input{{1, 0}, {0, 1}};
    CHECK(coalesce_passages(input, {0.5}).vectors == input);
    const auto merged = coalesce_passages(input, {1.5});
    REQUIRE(merged.vectors.size() == 1);
    CHECK(merged.vectors[0] == DenseVector{0.5f, 0.5f});
}

TEST_CASE("running mean, not the first vector, decides the split") {
    // mean of [1,0] and [0.8,0.6] is [0.9,0.3]; [0,1] is 0.68 away from the
    // mean but 1.0 away from the first vector.
    const std::vector<DenseVector> input{{1, 0}, {0.8f, 0.6f}, {0, 1}};
    const auto out = coalesce_passages(input, {0.7});
    CHECK(out.vectors.size() == 1);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(coalesce_passages(std::vector<DenseVector>{}, {0.1}), InvalidArgument);
    CHECK_THROWS_AS(CoalesceConfig{-0.1}.validate(), InvalidArgument);
}

TEST_CASE("random partitions replay") {
    std::mt19937_64 rng(41);
    for (double delta : {0.0, 0.3, 0.8, 1.0, 1.2, 2.1}) {
        for (int doc = 0; doc < 20; ++doc) {
            const auto input = random_passages(rng, 1 + rng() % 15, 4);
            const auto out = coalesce_passages(input, {delta});
            check_partition(input, out, delta);
            if (delta > 2.0) CHECK(out.vectors.size() == 1);
        }
    }
}

TEST_CASE("index-level coalescing") {
    std::mt19937_64 rng(43);
    std::vector<ForwardIndex::Entry> entries;
    for (int d = 0; d < 30; ++d) entries.push_back({DocId(testing::doc_name(d)), random_passages(rng, 1 + rng() % 6, 3)});
    const auto index = ForwardIndex::build(entries);

    const auto same = coalesce_index(index, {0.0});
    CHECK(same.stats.input_vectors == index.vector_count());
    CHECK(same.stats.output_vectors == index.vector_count());
    CHECK(same.stats.compression_ratio() == 1.0);
    CHECK(same.index.serialize() == index.serialize());

    const auto one = coalesce_index(index, {2.1});
    CHECK(one.stats.output_vectors == 30);
    for (const auto& e : entries) {
        const auto expected = coalesce_passages(e.passages, {2.1});
        CHECK(one.index.lookup(e.id).to_vectors() == expected.vectors);
    }
    CHECK(coalesce_index(index, {0.7}).index.serialize() == coalesce_index(index, {0.7}).index.serialize());
}

TEST_CASE("sweep report") {
    const auto index = ForwardIndex::build({{DocId("a"), {{1, 0}, {0, 1}}}, {DocId("b"), {{1, 1}}}});
    const std::vector<double> deltas{0.0, 1.5};
    const auto rows = coalesce_sweep(index, deltas);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].stats.output_vectors == 3);
    CHECK(rows[1].stats.output_vectors == 2);
    CHECK(sweep_csv(rows) == "delta,total_vectors,compression_ratio\n0,3,1\n1.5,2,0.6666666666666666\n");
}
