#include "curate.h"

#include <string>

#include <json.hpp>

#include "curate/cleaning.hpp"
#include "curate/error.hpp"
#include "curate/exact_dedup.hpp"
#include "curate/fuzzy_dedup.hpp"
#include "curate/jsonl.hpp"
#include "curate/mixer.hpp"
#include "curate/pipeline.hpp"
#include "curate/quality.hpp"
#include "curate/semantic.hpp"

struct curate_ctx {
    std::string last_error;
    std::string last_manifest;
    std::string last_stats;
};

namespace {

std::string manifest_json(const curate::RunManifest& m) {
    nlohmann::ordered_json j;
    j["stage"] = m.stage;
    j["docs_in"] = m.docs_in;
    j["docs_out"] = m.docs_out;
    j["docs_dropped"] = m.docs_dropped;
    j["drop_reasons"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m.drop_reasons) j["drop_reasons"][k] = v;
    j["seed"] = m.seed;
    j["config_digest"] = m.config_digest;
    j["wall_time_ms"] = m.wall_time_ms;
    return j.dump();
}

template <typename Fn>
curate_status guarded(curate_ctx* ctx, Fn&& fn) {
    if (!ctx) return CURATE_ERR_VALIDATION;
    ctx->last_error.clear();
    try {
        fn();
        return CURATE_OK;
    } catch (const curate::ConfigError& e) {
        ctx->last_error = e.what();
        return CURATE_ERR_VALIDATION;
    } catch (const std::exception& e) {
        ctx->last_error = e.what();
        return CURATE_ERR_STAGE;
    }
}

curate_status require(curate_ctx* ctx, bool ok, const char* msg) {
    if (ok) return CURATE_OK;
    if (ctx) ctx->last_error = msg;
    return CURATE_ERR_VALIDATION;
}

std::unique_ptr<curate::TokenCounter> make_counter(const char* tokenizer, const char* endpoint) {
    std::string kind = tokenizer ? tokenizer : "whitespace";
    if (kind == "whitespace") return curate::whitespace_counter();
    if (kind == "http") {
        if (!endpoint || !*endpoint)
            throw curate::ConfigError("http tokenizer needs an endpoint");
        return curate::http_token_counter(endpoint);
    }
    throw curate::ConfigError("unknown tokenizer: " + kind);
}

}  // namespace

extern "C" {

curate_ctx* curate_ctx_new(void) { return new (std::nothrow) curate_ctx; }

void curate_ctx_free(curate_ctx* ctx) { delete ctx; }

const char* curate_last_error(const curate_ctx* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

const char* curate_last_manifest_json(const curate_ctx* ctx) {
    return ctx ? ctx->last_manifest.c_str() : "";
}

curate_status curate_clean(curate_ctx* ctx, const char* input_path, const char* output_path,
                           size_t min_chars) {
    if (auto rc = require(ctx, input_path && output_path, "input and output paths are required"))
        return rc;
    return guarded(ctx, [&] {
        auto m = curate::clean_stage(input_path, output_path, min_chars);
        curate::write_manifest(output_path, m);
        ctx->last_manifest = manifest_json(m);
    });
}

curate_status curate_filter_quality(curate_ctx* ctx, const char* input_path,
                                    const char* output_path, const char* classifier,
                                    const char* endpoint) {
    if (auto rc = require(ctx, input_path && output_path, "input and output paths are required"))
        return rc;
    return guarded(ctx, [&] {
        std::string kind = classifier ? classifier : "heuristic";
        std::unique_ptr<curate::QualityClassifier> clf;
        if (kind == "heuristic") {
            clf = curate::heuristic_classifier();
        } else if (kind == "http") {
            if (!endpoint || !*endpoint)
                throw curate::ConfigError("http classifier needs an endpoint");
            clf = curate::http_classifier(endpoint);
        } else {
            throw curate::ConfigError("unknown classifier: " + kind);
        }
        auto m = curate::filter_quality(input_path, output_path, *clf);
        curate::write_manifest(output_path, m);
        ctx->last_manifest = manifest_json(m);
    });
}

curate_status curate_dedup_exact(curate_ctx* ctx, const char* input_path, const char* output_path,
                                 const char* report_path) {
    if (auto rc = require(ctx, input_path && output_path, "input and output paths are required"))
        return rc;
    return guarded(ctx, [&] {
        auto m = curate::dedup_exact(input_path, output_path, report_path ? report_path : "");
        curate::write_manifest(output_path, m);
        ctx->last_manifest = manifest_json(m);
    });
}

void curate_fuzzy_params_init(curate_fuzzy_params* params) {
    if (!params) return;
    *params = curate_fuzzy_params{};
    params->shingle_k = 5;
    params->bands = 20;
    params->rows = 13;
    params->tau = 0.8;
    params->anchor_fraction = 0.10;
    params->workers = 1;
}

curate_status curate_dedup_fuzzy(curate_ctx* ctx, const char* input_path, const char* output_path,
                                 const curate_fuzzy_params* params,
                                 const char* graph_report_path) {
    if (auto rc = require(ctx, input_path && output_path && params,
                          "input path, output path, and params are required"))
        return rc;
    return guarded(ctx, [&] {
        curate::FuzzyConfig fc;
        fc.k = params->shingle_k;
        fc.unit = params->char_unit ? curate::ShingleUnit::Char : curate::ShingleUnit::Word;
        fc.lsh.bands = params->bands;
        fc.lsh.rows = params->rows;
        fc.tau = params->tau;
        fc.anchor_fraction = params->anchor_fraction;
        fc.seed = params->seed;
        fc.exact_refine = params->exact_refine != 0;
        fc.workers = params->workers ? params->workers : 1;
        auto m = curate::dedup_fuzzy(input_path, output_path, fc,
                                     graph_report_path ? graph_report_path : "");
        curate::write_manifest(output_path, m);
        ctx->last_manifest = manifest_json(m);
    });
}

curate_status curate_filter_semantic(curate_ctx* ctx, const char* input_path,
                                     const char* output_path, const char* queries_path,
                                     const char* embedder, const char* endpoint, size_t dimension,
                                     double threshold, uint64_t seed, size_t workers,
                                     const char* report_path) {
    if (auto rc = require(ctx, input_path && output_path, "input and output paths are required"))
        return rc;
    return guarded(ctx, [&] {
        std::string kind = embedder ? embedder : "test";
        std::unique_ptr<curate::Embedder> emb;
        if (kind == "test") {
            emb = curate::test_embedder(dimension ? dimension : 256, seed);
        } else if (kind == "http") {
            if (!endpoint || !*endpoint)
                throw curate::ConfigError("http embedder needs an endpoint");
            emb = curate::http_embedder(endpoint, dimension);
        } else {
            throw curate::ConfigError("unknown embedder: " + kind);
        }
        std::vector<curate::ReferenceQuery> queries =
            queries_path ? curate::load_reference_queries(queries_path)
                         : curate::default_reference_queries();
        auto m = curate::filter_semantic(input_path, output_path, queries, *emb, threshold,
                                         workers ? workers : 1, report_path ? report_path : "");
        curate::write_manifest(output_path, m);
        ctx->last_manifest = manifest_json(m);
    });
}

curate_status curate_write_default_queries(curate_ctx* ctx, const char* path) {
    if (auto rc = require(ctx, path != nullptr, "path is required")) return rc;
    return guarded(ctx,
                   [&] { curate::write_reference_queries(path, curate::default_reference_queries()); });
}

curate_status curate_make_pairs(curate_ctx* ctx, const char* input_path, const char* output_path,
                                const char* strategy, size_t chunk_budget, size_t pair_budget,
                                size_t side_target, size_t max_paragraph, const char* tokenizer,
                                const char* endpoint) {
    if (auto rc = require(ctx, input_path && output_path, "input and output paths are required"))
        return rc;
    return guarded(ctx, [&] {
        curate::PairingConfig pc;
        std::string kind = strategy ? strategy : "pile";
        if (kind == "pile") {
            pc.strategy = curate::PairStrategy::PileChunks;
        } else if (kind == "paper") {
            pc.strategy = curate::PairStrategy::PaperParagraphs;
        } else {
            throw curate::ConfigError("unknown strategy: " + kind);
        }
        if (chunk_budget) pc.chunk_budget = chunk_budget;
        if (pair_budget) pc.pair_budget = pair_budget;
        if (side_target) pc.side_target = side_target;
        if (max_paragraph) pc.max_paragraph = max_paragraph;
        auto tc = make_counter(tokenizer, endpoint);
        auto m = curate::make_pairs(input_path, output_path, *tc, pc);
        curate::write_manifest(output_path, m);
        ctx->last_manifest = manifest_json(m);
    });
}

curate_status curate_mix(curate_ctx* ctx, const char* spec_path, const char* output_path) {
    if (auto rc = require(ctx, spec_path && output_path, "spec and output paths are required"))
        return rc;
    return guarded(ctx, [&] {
        auto spec = curate::load_mix_spec(spec_path);
        auto m = curate::mix(spec, output_path);
        curate::write_manifest(output_path, m);
        ctx->last_manifest = manifest_json(m);
    });
}

curate_status curate_stats(curate_ctx* ctx, const char* path, const char* tokenizer,
                           const char* endpoint, const char** stats_json_out) {
    if (auto rc = require(ctx, path && stats_json_out, "path and output pointer are required"))
        return rc;
    return guarded(ctx, [&] {
        auto tc = make_counter(tokenizer, endpoint);
        ctx->last_stats = curate::stats_to_json(curate::stats(path, *tc));
        *stats_json_out = ctx->last_stats.c_str();
    });
}

curate_status curate_run_pipeline(curate_ctx* ctx, const char* config_path) {
    if (auto rc = require(ctx, config_path != nullptr, "config path is required")) return rc;
    return guarded(ctx, [&] {
        auto cfg = curate::load_pipeline_config(config_path);
        auto manifests = curate::run_pipeline(cfg);
        if (!manifests.empty()) ctx->last_manifest = manifest_json(manifests.back());
    });
}

}  // extern "C"
