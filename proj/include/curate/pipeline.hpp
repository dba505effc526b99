#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "curate/document.hpp"
#include "curate/pairing.hpp"

namespace curate {

// One configured stage; `params` holds the stage's validated parameter block.
struct StageConfig {
    std::string name;
    nlohmann::json params;
};

struct PipelineConfig {
    uint64_t seed = 0;
    size_t workers = 1;
    std::string input;
    std::string output_dir;
    std::string config_json;  // canonical serialization, hashed into config_digest
    std::vector<StageConfig> stages;
};

// Parse + validate a pipeline config file. Unknown keys are rejected and the
// stage list must be a subsequence of the canonical order:
// clean, filter-quality, dedup-exact, dedup-fuzzy, filter-semantic,
// make-pairs, mix.
PipelineConfig load_pipeline_config(const std::string& path);

// Stage seeds are derived from the global seed and the stage name alone.
uint64_t derive_stage_seed(uint64_t global_seed, const std::string& stage_name);

// Execute all stages in order, each reading the previous stage's output.
// Writes per-stage outputs and manifests under output_dir plus a top-level
// summary. A failing stage aborts the run, leaving completed outputs and a
// FAILED marker naming the stage.
std::vector<RunManifest> run_pipeline(const PipelineConfig& cfg);

struct CorpusStats {
    std::string kind;  // "documents" or "pairs"
    uint64_t count = 0;
    uint64_t total_tokens = 0;
    std::map<std::string, uint64_t> per_source;
    double mean_tokens = 0.0;
    uint64_t median_tokens = 0;
    std::map<std::string, uint64_t> pairs_per_strategy;
};

// Exact counts over a documents or pairs file; token totals under `tc`.
CorpusStats stats(const std::string& path, TokenCounter& tc);

std::string stats_to_json(const CorpusStats& s);

}  // namespace curate
