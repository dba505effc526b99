/* C interface to the curate corpus-preparation library.
 *
 * All functions return a curate_status code. A curate_ctx carries the last
 * error message and the manifest of the last completed stage (as JSON);
 * contexts are not thread-safe, use one per thread.
 */
#ifndef CURATE_H
#define CURATE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct curate_ctx curate_ctx;

typedef enum curate_status {
    CURATE_OK = 0,
    CURATE_ERR_VALIDATION = 1, /* bad config, flags, or input path */
    CURATE_ERR_STAGE = 2       /* failure while a stage was running */
} curate_status;

curate_ctx* curate_ctx_new(void);
void curate_ctx_free(curate_ctx* ctx);

/* Valid until the next call on the same context. Empty string when no error. */
const char* curate_last_error(const curate_ctx* ctx);
/* Manifest of the last completed stage as a JSON object, or "" if none. */
const char* curate_last_manifest_json(const curate_ctx* ctx);

/* --- individual pipeline stages (file to file, JSONL) ------------------- */

curate_status curate_clean(curate_ctx* ctx, const char* input_path, const char* output_path,
                           size_t min_chars);

/* classifier: "heuristic" or "http" (endpoint required for "http"). */
curate_status curate_filter_quality(curate_ctx* ctx, const char* input_path,
                                    const char* output_path, const char* classifier,
                                    const char* endpoint);

/* report_path may be NULL to skip the dropped-id report. */
curate_status curate_dedup_exact(curate_ctx* ctx, const char* input_path, const char* output_path,
                                 const char* report_path);

typedef struct curate_fuzzy_params {
    size_t shingle_k;          /* default 5 */
    int char_unit;             /* 0 = word shingles, 1 = char shingles */
    size_t bands;              /* default 20 */
    size_t rows;               /* default 13 */
    double tau;                /* default 0.8 */
    double anchor_fraction;    /* default 0.10 */
    uint64_t seed;
    int exact_refine;          /* nonzero: exact shingle Jaccard in refinement */
    size_t workers;            /* 0 or 1: single-threaded */
} curate_fuzzy_params;

void curate_fuzzy_params_init(curate_fuzzy_params* params);

/* graph_report_path may be NULL. */
curate_status curate_dedup_fuzzy(curate_ctx* ctx, const char* input_path, const char* output_path,
                                 const curate_fuzzy_params* params,
                                 const char* graph_report_path);

/* embedder: "test" or "http". queries_path NULL uses the built-in reference
 * query set. report_path may be NULL. */
curate_status curate_filter_semantic(curate_ctx* ctx, const char* input_path,
                                     const char* output_path, const char* queries_path,
                                     const char* embedder, const char* endpoint, size_t dimension,
                                     double threshold, uint64_t seed, size_t workers,
                                     const char* report_path);

/* Write the built-in reference query set (JSONL of {topic, query}). */
curate_status curate_write_default_queries(curate_ctx* ctx, const char* path);

/* strategy: "pile" or "paper"; tokenizer: "whitespace" or "http". */
curate_status curate_make_pairs(curate_ctx* ctx, const char* input_path, const char* output_path,
                                const char* strategy, size_t chunk_budget, size_t pair_budget,
                                size_t side_target, size_t max_paragraph, const char* tokenizer,
                                const char* endpoint);

/* spec_path: JSON mix spec {entries: [{label, weight, path}], seed, total}. */
curate_status curate_mix(curate_ctx* ctx, const char* spec_path, const char* output_path);

/* Corpus or pairs statistics as JSON; valid until the next call on ctx. */
curate_status curate_stats(curate_ctx* ctx, const char* path, const char* tokenizer,
                           const char* endpoint, const char** stats_json_out);

/* Run a full pipeline from a JSON config file. */
curate_status curate_run_pipeline(curate_ctx* ctx, const char* config_path);

#ifdef __cplusplus
}
#endif

#endif /* CURATE_H */
