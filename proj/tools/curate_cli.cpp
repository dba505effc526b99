// Command-line front end for the curate pipeline, built on the C API only.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "curate.h"

namespace {

int finish(curate_ctx* ctx, curate_status rc, bool print_manifest = true) {
    if (rc != CURATE_OK) {
        std::fprintf(stderr, "error: %s\n", curate_last_error(ctx));
    } else if (print_manifest) {
        const char* manifest = curate_last_manifest_json(ctx);
        if (*manifest) std::printf("%s\n", manifest);
    }
    return static_cast<int>(rc);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curate - corpus cleaning, deduplication, filtering, and SFT pair generation"};
    app.require_subcommand(1);

    std::string input, output, report, endpoint, queries_file, config_file, spec_file, path;

    // clean
    auto* clean = app.add_subcommand("clean", "rule-based text cleaning");
    size_t min_chars = 200;
    clean->add_option("--input", input)->required();
    clean->add_option("--output", output)->required();
    clean->add_option("--min-chars", min_chars, "drop cleaned docs shorter than this");

    // filter-quality
    auto* quality = app.add_subcommand("filter-quality", "retain high and medium quality documents");
    std::string classifier = "heuristic";
    quality->add_option("--input", input)->required();
    quality->add_option("--output", output)->required();
    quality->add_option("--classifier", classifier)->check(CLI::IsMember({"heuristic", "http"}));
    quality->add_option("--endpoint", endpoint, "classifier service URL (http classifier)");

    // dedup-exact
    auto* dexact = app.add_subcommand("dedup-exact", "remove byte-identical documents");
    dexact->add_option("--input", input)->required();
    dexact->add_option("--output", output)->required();
    dexact->add_option("--report", report, "JSONL report of dropped ids");

    // dedup-fuzzy
    auto* dfuzzy = app.add_subcommand("dedup-fuzzy", "MinHash/LSH near-duplicate removal");
    curate_fuzzy_params fuzzy;
    curate_fuzzy_params_init(&fuzzy);
    std::string unit = "word";
    bool exact_refine = false;
    dfuzzy->add_option("--input", input)->required();
    dfuzzy->add_option("--output", output)->required();
    dfuzzy->add_option("--k", fuzzy.shingle_k, "shingle size");
    dfuzzy->add_option("--unit", unit)->check(CLI::IsMember({"word", "char"}));
    dfuzzy->add_option("--bands", fuzzy.bands);
    dfuzzy->add_option("--rows", fuzzy.rows);
    dfuzzy->add_option("--tau", fuzzy.tau, "Jaccard similarity threshold");
    dfuzzy->add_option("--anchor-fraction", fuzzy.anchor_fraction);
    dfuzzy->add_option("--seed", fuzzy.seed);
    dfuzzy->add_flag("--exact-refine", exact_refine, "exact shingle Jaccard in refinement");
    dfuzzy->add_option("--workers", fuzzy.workers);
    dfuzzy->add_option("--graph-report", report, "JSONL report of duplicate components");

    // filter-semantic
    auto* semantic = app.add_subcommand("filter-semantic", "keep documents near reference queries");
    std::string embedder = "test";
    double threshold = 0.8;
    size_t dimension = 256;
    uint64_t sem_seed = 0;
    size_t sem_workers = 1;
    semantic->add_option("--input", input)->required();
    semantic->add_option("--output", output)->required();
    semantic->add_option("--threshold", threshold);
    semantic->add_option("--embedder", embedder)->check(CLI::IsMember({"test", "http"}));
    semantic->add_option("--endpoint", endpoint, "embedding service URL (http embedder)");
    semantic->add_option("--dimension", dimension);
    semantic->add_option("--queries", queries_file, "JSONL of {topic, query}; default built-in set");
    semantic->add_option("--seed", sem_seed);
    semantic->add_option("--workers", sem_workers);
    semantic->add_option("--report", report, "per-document similarity report");

    // write-queries (helper to materialize the built-in reference query set)
    auto* wq = app.add_subcommand("write-queries", "write the built-in reference query set");
    wq->add_option("--output", output)->required();

    // make-pairs
    auto* pairs = app.add_subcommand("make-pairs", "generate SFT input/output pairs");
    std::string strategy = "pile";
    std::string tokenizer = "whitespace";
    size_t chunk_budget = 600, pair_budget = 4096, side_target = 2000, max_paragraph = 2000;
    pairs->add_option("--input", input)->required();
    pairs->add_option("--output", output)->required();
    pairs->add_option("--strategy", strategy)->check(CLI::IsMember({"pile", "paper"}));
    pairs->add_option("--chunk-budget", chunk_budget);
    pairs->add_option("--pair-budget", pair_budget);
    pairs->add_option("--side-target", side_target);
    pairs->add_option("--max-paragraph", max_paragraph);
    pairs->add_option("--tokenizer", tokenizer)->check(CLI::IsMember({"whitespace", "http"}));
    pairs->add_option("--endpoint", endpoint, "tokenizer service URL (http tokenizer)");

    // mix
    auto* mix = app.add_subcommand("mix", "weighted sampling across pair sources");
    mix->add_option("--spec", spec_file, "JSON mix spec")->required();
    mix->add_option("--output", output)->required();

    // stats
    auto* stats = app.add_subcommand("stats", "corpus or pairs statistics");
    std::string stats_tokenizer = "whitespace";
    stats->add_option("--input", path)->required();
    stats->add_option("--tokenizer", stats_tokenizer)->check(CLI::IsMember({"whitespace", "http"}));
    stats->add_option("--endpoint", endpoint);

    // run
    auto* run = app.add_subcommand("run", "run a configured multi-stage pipeline");
    run->add_option("--config", config_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(CURATE_ERR_VALIDATION);
    }

    curate_ctx* ctx = curate_ctx_new();
    int rc = 0;

    if (clean->parsed()) {
        rc = finish(ctx, curate_clean(ctx, input.c_str(), output.c_str(), min_chars));
    } else if (quality->parsed()) {
        rc = finish(ctx, curate_filter_quality(ctx, input.c_str(), output.c_str(),
                                               classifier.c_str(),
                                               endpoint.empty() ? nullptr : endpoint.c_str()));
    } else if (dexact->parsed()) {
        rc = finish(ctx, curate_dedup_exact(ctx, input.c_str(), output.c_str(),
                                            report.empty() ? nullptr : report.c_str()));
    } else if (dfuzzy->parsed()) {
        fuzzy.char_unit = unit == "char" ? 1 : 0;
        fuzzy.exact_refine = exact_refine ? 1 : 0;
        rc = finish(ctx, curate_dedup_fuzzy(ctx, input.c_str(), output.c_str(), &fuzzy,
                                            report.empty() ? nullptr : report.c_str()));
    } else if (semantic->parsed()) {
        rc = finish(ctx, curate_filter_semantic(
                             ctx, input.c_str(), output.c_str(),
                             queries_file.empty() ? nullptr : queries_file.c_str(),
                             embedder.c_str(), endpoint.empty() ? nullptr : endpoint.c_str(),
                             dimension, threshold, sem_seed, sem_workers,
                             report.empty() ? nullptr : report.c_str()));
    } else if (wq->parsed()) {
        rc = finish(ctx, curate_write_default_queries(ctx, output.c_str()), false);
    } else if (pairs->parsed()) {
        rc = finish(ctx, curate_make_pairs(ctx, input.c_str(), output.c_str(), strategy.c_str(),
                                           chunk_budget, pair_budget, side_target, max_paragraph,
                                           tokenizer.c_str(),
                                           endpoint.empty() ? nullptr : endpoint.c_str()));
    } else if (mix->parsed()) {
        rc = finish(ctx, curate_mix(ctx, spec_file.c_str(), output.c_str()));
    } else if (stats->parsed()) {
        const char* json = nullptr;
        curate_status st = curate_stats(ctx, path.c_str(), stats_tokenizer.c_str(),
                                        endpoint.empty() ? nullptr : endpoint.c_str(), &json);
        if (st == CURATE_OK) std::printf("%s\n", json);
        rc = finish(ctx, st, false);
    } else if (run->parsed()) {
        rc = finish(ctx, curate_run_pipeline(ctx, config_file.c_str()));
    }

    curate_ctx_free(ctx);
    return rc;
}
