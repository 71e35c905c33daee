// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Links only the C interface of libfastforward.
//
// Exit codes: 0 success, 1 internal error, 2 usage, 3 input, 4 format.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fastforward/fastforward.h"

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitFormat = 4;

/// Thrown inside subcommand handlers; carries the process exit code.
struct CommandError {
    int exit_code;
    std::string message;
};

int exit_code_for(ff_status status) {
    switch (status) {
        case FF_OK: return 0;
        case FF_ERR_INVALID_ARGUMENT: return kExitUsage;
        case FF_ERR_IO:
        case FF_ERR_INPUT:
        case FF_ERR_MISSING_DOCUMENT:
        case FF_ERR_DIMENSION_MISMATCH: return kExitInput;
        case FF_ERR_FORMAT: return kExitFormat;
        case FF_ERR_INTERNAL: return kExitInternal;
    }
    return kExitInternal;
}

void check(ff_status status) {
    if (status != FF_OK) throw CommandError{exit_code_for(status), ff_last_error()};
}

[[noreturn]] void usage_error(const std::string& message) { throw CommandError{kExitUsage, message}; }

struct SparseDeleter {
    void operator()(ff_sparse_index* p) const { ff_sparse_free(p); }
};
struct ForwardDeleter {
    void operator()(ff_forward_index* p) const { ff_forward_free(p); }
};
struct ReportDeleter {
    void operator()(ff_eval_report* p) const { ff_eval_report_free(p); }
};
using SparsePtr = std::unique_ptr<ff_sparse_index, SparseDeleter>;
using ForwardPtr = std::unique_ptr<ff_forward_index, ForwardDeleter>;
using ReportPtr = std::unique_ptr<ff_eval_report, ReportDeleter>;

SparsePtr load_sparse(const std::string& path) {
    ff_sparse_index* p = nullptr;
    check(ff_sparse_load(path.c_str(), &p));
    return SparsePtr(p);
}

ForwardPtr load_forward(const std::string& path) {
    ff_forward_index* p = nullptr;
    check(ff_forward_load(path.c_str(), &p));
    return ForwardPtr(p);
}

struct IndexArgs {
    std::string corpus;
    std::string sparse_out;
    std::string forward_out;
    std::string encoder = "toy";
    std::string vectors;
    std::uint32_t dim = 64;
    std::uint64_t seed = 0;
    std::uint32_t window = 200;
    std::uint32_t stride = 200;
    double k1 = 0.82;
    double b = 0.68;
    bool document_params = false;
};

void cmd_index(const IndexArgs& a) {
    if (a.encoder != "toy" && a.encoder != "interchange") usage_error("--encoder must be 'toy' or 'interchange'");
    if (a.encoder == "interchange" && a.vectors.empty()) usage_error("--encoder interchange needs --vectors");
    const double k1 = a.document_params ? 4.46 : a.k1;
    const double b = a.document_params ? 0.82 : a.b;

    ff_sparse_index* sparse_raw = nullptr;
    check(ff_sparse_build(a.corpus.c_str(), k1, b, &sparse_raw));
    SparsePtr sparse(sparse_raw);

    ff_forward_index* forward_raw = nullptr;
    if (a.encoder == "toy") {
        check(ff_forward_build_toy(a.corpus.c_str(), a.dim, a.seed, a.window, a.stride, &forward_raw));
    } else {
        check(ff_forward_load_interchange(a.vectors.c_str(), &forward_raw));
    }
    ForwardPtr forward(forward_raw);

    check(ff_sparse_save(sparse.get(), a.sparse_out.c_str()));
    check(ff_forward_save(forward.get(), a.forward_out.c_str()));
    std::printf("indexed %zu docs: sparse -> %s, %zu vectors (dim %u) -> %s\n", ff_sparse_doc_count(sparse.get()),
                a.sparse_out.c_str(), ff_forward_vector_count(forward.get()), ff_forward_dimension(forward.get()),
                a.forward_out.c_str());
}

struct CoalesceArgs {
    std::string index;
    std::string out;
    double delta = -1.0;
    std::vector<double> sweep;
    std::string report;
};

void cmd_coalesce(const CoalesceArgs& a) {
    const bool sweeping = !a.sweep.empty();
    if (!sweeping && a.delta < 0.0) usage_error("--delta must be >= 0 (or use --sweep)");
    if (!sweeping && a.out.empty()) usage_error("--out is required with --delta");
    if (sweeping && a.report.empty()) usage_error("--sweep needs --report");
    for (double d : a.sweep) {
        if (!(d >= 0.0) || !std::isfinite(d)) usage_error("sweep deltas must be finite and >= 0");
    }
    if (!std::isfinite(a.delta)) usage_error("--delta must be finite");

    const auto index = load_forward(a.index);
    if (sweeping) {
        check(ff_forward_coalesce_sweep(index.get(), a.sweep.data(), a.sweep.size(), a.report.c_str()));
        std::printf("sweep over %zu deltas -> %s\n", a.sweep.size(), a.report.c_str());
    }
    if (a.delta >= 0.0) {
        ff_forward_index* out_raw = nullptr;
        std::size_t before = 0, after = 0;
        check(ff_forward_coalesce(index.get(), a.delta, &out_raw, &before, &after));
        ForwardPtr out(out_raw);
        check(ff_forward_save(out.get(), a.out.c_str()));
        std::printf("coalesced delta=%g: %zu -> %zu vectors (ratio %.4f) -> %s\n", a.delta, before, after,
                    before ? static_cast<double>(after) / static_cast<double>(before) : 1.0, a.out.c_str());
    }
}

struct SearchArgs {
    std::string sparse;
    std::string forward;
    std::string queries;
    std::string query_vectors;
    std::uint64_t seed = 0;
    std::string mode = "interpolate";
    double alpha = 0.2;
    std::size_t k = 10;
    std::size_t k_s = 1000;
    std::size_t k_d = 1000;
    bool oracle_sd = false;
    std::string out;
    std::string tag = "fastforward";
    // bench only
    std::size_t rounds = 3;
    std::size_t warmup = 1;
    std::string csv;
};

ff_search_config to_config(const SearchArgs& a) {
    ff_search_config cfg;
    ff_search_config_init(&cfg);
    if (ff_mode_parse(a.mode.c_str(), &cfg.mode) != FF_OK) usage_error(ff_last_error());
    cfg.alpha = a.alpha;
    cfg.k = a.k;
    cfg.k_s = a.k_s;
    cfg.k_d = a.k_d;
    cfg.oracle_sd = a.oracle_sd ? 1 : 0;
    if (ff_search_config_validate(&cfg) != FF_OK) usage_error(ff_last_error());
    return cfg;
}

ff_query_source to_source(const SearchArgs& a) {
    return {a.queries.c_str(), a.query_vectors.empty() ? nullptr : a.query_vectors.c_str(), a.seed};
}

void cmd_search(const SearchArgs& a) {
    const auto cfg = to_config(a);
    const auto sparse = load_sparse(a.sparse);
    const auto forward = load_forward(a.forward);
    const auto source = to_source(a);
    std::size_t lookups = 0;
    check(ff_search(sparse.get(), forward.get(), &source, &cfg, a.tag.c_str(), a.out.c_str(), &lookups));
    std::printf("wrote run %s (%zu forward-index lookups)\n", a.out.c_str(), lookups);
}

void cmd_bench(const SearchArgs& a) {
    const auto cfg = to_config(a);
    if (a.rounds == 0) usage_error("--rounds must be >= 1");
    const auto sparse = load_sparse(a.sparse);
    const auto forward = load_forward(a.forward);
    const auto source = to_source(a);
    char* table = nullptr;
    check(ff_bench(sparse.get(), forward.get(), &source, &cfg, a.warmup, a.rounds,
                   a.csv.empty() ? nullptr : a.csv.c_str(), &table, nullptr));
    std::fputs(table, stdout);
    ff_string_free(table);
}

struct EvaluateArgs {
    std::string run;
    std::string qrels;
    std::string metrics = "ndcg@10,ap@1000,recall@1000,rr@10";
    bool per_query = false;
};

void cmd_evaluate(const EvaluateArgs& a) {
    ff_eval_report* raw = nullptr;
    const auto status = ff_evaluate(a.run.c_str(), a.qrels.c_str(), a.metrics.c_str(), &raw);
    check(status);
    ReportPtr report(raw);
    char* table = ff_eval_report_table(report.get(), a.per_query ? 1 : 0);
    if (!table) throw CommandError{kExitInternal, "cannot format report"};
    std::fputs(table, stdout);
    ff_string_free(table);
}

void add_search_options(CLI::App* cmd, SearchArgs& a) {
    cmd->add_option("--sparse", a.sparse, "Sparse index file")->required();
    cmd->add_option("--forward", a.forward, "Forward index (.ffi)")->required();
    cmd->add_option("--queries", a.queries, "Queries, qid<TAB>text")->required();
    cmd->add_option("--query-vectors", a.query_vectors, "Query vectors, qid<TAB>f,f,... (default: toy encoder)");
    cmd->add_option("--seed", a.seed, "Toy encoder seed for queries");
    cmd->add_option("--mode", a.mode, "rerank | interpolate | hybrid | early-stop");
    cmd->add_option("--alpha", a.alpha, "Sparse score weight");
    cmd->add_option("--k", a.k, "Cut-off depth");
    cmd->add_option("--ks", a.k_s, "Sparse retrieval depth");
    cmd->add_option("--kd", a.k_d, "Dense retrieval depth (hybrid)");
    cmd->add_flag("--oracle-sd", a.oracle_sd, "Early stop with the true dense maximum");
    cmd->add_option("--tag", a.tag, "Run tag");
}

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

/// Reads `key=value` lines ('#' starts a comment) into `--key=value` arguments.
std::vector<std::string> config_arguments(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CommandError{kExitInput, "cannot open config file '" + path + "'"};
    std::vector<std::string> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || strip(line.substr(0, eq)).empty()) {
            throw CommandError{kExitFormat, path + ": line " + std::to_string(line_no) + ": expected key=value"};
        }
        auto key = strip(line.substr(0, eq));
        if (key.rfind("--", 0) == 0) key = key.substr(2);
        out.push_back("--" + key + "=" + strip(line.substr(eq + 1)));
    }
    return out;
}

/// Command line with the contents of any `--config FILE` placed right after
/// the subcommand name, so that explicit flags (parsed later) win.
std::vector<std::string> expand_config(int argc, char** argv, const CLI::App& app) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
    }
    if (config.empty()) return args;
    auto sub = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
        return a.rfind('-', 0) != 0 && app.get_subcommand_no_throw(a) != nullptr;
    });
    if (sub == args.end()) return args;
    const auto extra = config_arguments(config);
    args.insert(sub + 1, extra.begin(), extra.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fast-Forward indexes: interpolation-based re-ranking with forward-index lookups"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ff_version());
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string config_path;

    IndexArgs index_args;
    auto* index = app.add_subcommand("index", "Build the sparse index and the .ffi forward index from a corpus");
    index->add_option("--config", config_path, "key=value config file; flags take precedence");
    index->add_option("--corpus", index_args.corpus, "Corpus, TSV or JSONL")->required();
    index->add_option("--sparse-out", index_args.sparse_out, "Sparse index output")->required();
    index->add_option("--forward-out", index_args.forward_out, "Forward index output (.ffi)")->required();
    index->add_option("--encoder", index_args.encoder, "toy | interchange");
    index->add_option("--vectors", index_args.vectors, "Vector interchange JSONL (encoder=interchange)");
    index->add_option("--dim", index_args.dim, "Toy encoder dimension");
    index->add_option("--seed", index_args.seed, "Toy encoder seed");
    index->add_option("--window", index_args.window, "Passage window in tokens");
    index->add_option("--stride", index_args.stride, "Passage stride in tokens");
    index->add_option("--k1", index_args.k1, "BM25 k1");
    index->add_option("--b", index_args.b, "BM25 b");
    index->add_flag("--document-params", index_args.document_params, "BM25 k1=4.46 b=0.82 for long documents");

    CoalesceArgs coalesce_args;
    auto* coalesce = app.add_subcommand("coalesce", "Compress a forward index by sequential coalescing");
    coalesce->add_option("--config", config_path, "key=value config file; flags take precedence");
    coalesce->add_option("--index", coalesce_args.index, "Input forward index")->required();
    coalesce->add_option("--delta", coalesce_args.delta, "Cosine-distance threshold");
    coalesce->add_option("--out", coalesce_args.out, "Output forward index");
    coalesce->add_option("--sweep", coalesce_args.sweep, "Deltas for a compression sweep")
        ->delimiter(',')
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    coalesce->add_option("--report", coalesce_args.report, "Sweep CSV output");

    SearchArgs search_args;
    auto* search = app.add_subcommand("search", "Retrieve and re-rank, writing a TREC run");
    search->add_option("--config", config_path, "key=value config file; flags take precedence");
    add_search_options(search, search_args);
    search->add_option("--out", search_args.out, "Run file output")->required();

    EvaluateArgs eval_args;
    auto* evaluate = app.add_subcommand("evaluate", "Score a TREC run against qrels");
    evaluate->add_option("--config", config_path, "key=value config file; flags take precedence");
    evaluate->add_option("--run", eval_args.run, "Run file")->required();
    evaluate->add_option("--qrels", eval_args.qrels, "Qrels file")->required();
    evaluate->add_option("--metrics", eval_args.metrics, "Comma-separated, e.g. ndcg@10,rr@10");
    evaluate->add_flag("--per-query", eval_args.per_query, "Also print per-query values");

    SearchArgs bench_args;
    auto* benchmark = app.add_subcommand("bench", "Measure second-stage latency per query");
    benchmark->add_option("--config", config_path, "key=value config file; flags take precedence");
    add_search_options(benchmark, bench_args);
    benchmark->add_option("--rounds", bench_args.rounds, "Measured rounds");
    benchmark->add_option("--warmup", bench_args.warmup, "Discarded warmup rounds");
    benchmark->add_option("--csv", bench_args.csv, "Latency CSV output");

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv, app);
    } catch (const CommandError& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return e.exit_code;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (index->parsed()) cmd_index(index_args);
        if (coalesce->parsed()) cmd_coalesce(coalesce_args);
        if (search->parsed()) cmd_search(search_args);
        if (evaluate->parsed()) cmd_evaluate(eval_args);
        if (benchmark->parsed()) cmd_bench(bench_args);
    } catch (const CommandError& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return e.exit_code;
    }
    return 0;
}
