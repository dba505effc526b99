#include "curate/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>

#include "curate/cleaning.hpp"
#include "curate/error.hpp"
#include "curate/exact_dedup.hpp"
#include "curate/fuzzy_dedup.hpp"
#include "curate/hashing.hpp"
#include "curate/jsonl.hpp"
#include "curate/mixer.hpp"
#include "curate/quality.hpp"
#include "curate/semantic.hpp"

namespace fs = std::filesystem;

namespace curate {

namespace {

const std::vector<std::string> kCanonicalOrder = {
    "clean",       "filter-quality", "dedup-exact", "dedup-fuzzy",
    "filter-semantic", "make-pairs",     "mix"};

const std::map<std::string, std::set<std::string>> kAllowedStageKeys = {
    {"clean", {"stage", "min_chars"}},
    {"filter-quality", {"stage", "classifier", "endpoint"}},
    {"dedup-exact", {"stage"}},
    {"dedup-fuzzy",
     {"stage", "k", "unit", "bands", "rows", "tau", "anchor_fraction", "exact_refine"}},
    {"filter-semantic", {"stage", "threshold", "embedder", "endpoint", "dimension", "queries", "model"}},
    {"make-pairs",
     {"stage", "strategy", "chunk_budget", "pair_budget", "side_target", "max_paragraph",
      "tokenizer", "endpoint"}},
    {"mix", {"stage", "weights", "total"}},
};

void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown key \"" + key + "\" in " + where);
    }
}

std::string stage_filename(size_t index, const std::string& stage) {
    char prefix[8];
    std::snprintf(prefix, sizeof(prefix), "%02zu_", index + 1);
    return prefix + stage + ".jsonl";
}

}  // namespace

uint64_t derive_stage_seed(uint64_t global_seed, const std::string& stage_name) {
    return mix64(global_seed, hash_bytes(stage_name));
}

PipelineConfig load_pipeline_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ConfigError("config is not a JSON object: " + path);

    reject_unknown_keys(j, {"seed", "workers", "input", "output_dir", "stages"}, "pipeline config");
    PipelineConfig cfg;
    cfg.seed = j.value("seed", uint64_t{0});
    cfg.workers = j.value("workers", size_t{1});
    if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
    if (!j.contains("input") || !j["input"].is_string()) throw ConfigError("config missing input");
    if (!j.contains("output_dir") || !j["output_dir"].is_string())
        throw ConfigError("config missing output_dir");
    cfg.input = j["input"].get<std::string>();
    cfg.output_dir = j["output_dir"].get<std::string>();

    if (!j.contains("stages") || !j["stages"].is_array() || j["stages"].empty())
        throw ConfigError("config missing stages array");

    size_t canon_pos = 0;
    for (const auto& sj : j["stages"]) {
        if (!sj.is_object() || !sj.contains("stage") || !sj["stage"].is_string())
            throw ConfigError("every stage block needs a \"stage\" name");
        StageConfig sc;
        sc.name = sj["stage"].get<std::string>();
        auto allowed = kAllowedStageKeys.find(sc.name);
        if (allowed == kAllowedStageKeys.end()) throw ConfigError("unknown stage: " + sc.name);
        reject_unknown_keys(sj, allowed->second, "stage \"" + sc.name + "\"");

        auto it = std::find(kCanonicalOrder.begin() + canon_pos, kCanonicalOrder.end(), sc.name);
        if (it == kCanonicalOrder.end()) {
            throw ConfigError("stage \"" + sc.name +
                              "\" is out of order: stages must follow the pipeline order " +
                              "clean, filter-quality, dedup-exact, dedup-fuzzy, filter-semantic, "
                              "make-pairs, mix");
        }
        canon_pos = static_cast<size_t>(it - kCanonicalOrder.begin()) + 1;
        sc.params = sj;
        cfg.stages.push_back(std::move(sc));
    }

    // Workers do not participate in seeding or digesting: parallelism must
    // not change outputs.
    nlohmann::json canonical = j;
    canonical.erase("workers");
    cfg.config_json = canonical.dump();
    return cfg;
}

std::vector<RunManifest> run_pipeline(const PipelineConfig& cfg) {
    fs::create_directories(cfg.output_dir);
    const std::string digest = Digest128{hash_bytes(cfg.config_json, 1), hash_bytes(cfg.config_json, 2)}.hex();

    std::vector<RunManifest> manifests;
    std::string current_input = cfg.input;

    for (size_t i = 0; i < cfg.stages.size(); ++i) {
        const StageConfig& sc = cfg.stages[i];
        const nlohmann::json& p = sc.params;
        std::string output = (fs::path(cfg.output_dir) / stage_filename(i, sc.name)).string();
        uint64_t stage_seed = derive_stage_seed(cfg.seed, sc.name);

        RunManifest m;
        auto start = std::chrono::steady_clock::now();
        try {
            if (sc.name == "clean") {
                m = clean_stage(current_input, output, p.value("min_chars", size_t{200}));
            } else if (sc.name == "filter-quality") {
                std::string kind = p.value("classifier", std::string{"heuristic"});
                std::unique_ptr<QualityClassifier> clf;
                if (kind == "heuristic") {
                    clf = heuristic_classifier();
                } else if (kind == "http") {
                    if (!p.contains("endpoint"))
                        throw ConfigError("filter-quality with http classifier needs an endpoint");
                    clf = http_classifier(p["endpoint"].get<std::string>());
                } else {
                    throw ConfigError("unknown classifier: " + kind);
                }
                m = filter_quality(current_input, output, *clf);
            } else if (sc.name == "dedup-exact") {
                m = dedup_exact(current_input, output, output + ".report.jsonl");
            } else if (sc.name == "dedup-fuzzy") {
                FuzzyConfig fc;
                fc.k = p.value("k", size_t{5});
                std::string unit = p.value("unit", std::string{"word"});
                if (unit != "word" && unit != "char") throw ConfigError("unit must be word or char");
                fc.unit = unit == "word" ? ShingleUnit::Word : ShingleUnit::Char;
                fc.lsh.bands = p.value("bands", size_t{20});
                fc.lsh.rows = p.value("rows", size_t{13});
                fc.tau = p.value("tau", 0.8);
                fc.anchor_fraction = p.value("anchor_fraction", 0.10);
                fc.exact_refine = p.value("exact_refine", false);
                fc.seed = stage_seed;
                fc.workers = cfg.workers;
                m = dedup_fuzzy(current_input, output, fc, output + ".graph.jsonl");
            } else if (sc.name == "filter-semantic") {
                std::string kind = p.value("embedder", std::string{"test"});
                size_t dim = p.value("dimension", size_t{256});
                std::unique_ptr<Embedder> emb;
                if (kind == "test") {
                    emb = test_embedder(dim, stage_seed);
                } else if (kind == "http") {
                    if (!p.contains("endpoint"))
                        throw ConfigError("filter-semantic with http embedder needs an endpoint");
                    emb = http_embedder(p["endpoint"].get<std::string>(), dim,
                                        p.value("model", std::string{}));
                } else {
                    throw ConfigError("unknown embedder: " + kind);
                }
                std::vector<ReferenceQuery> queries =
                    p.contains("queries") ? load_reference_queries(p["queries"].get<std::string>())
                                          : default_reference_queries();
                m = filter_semantic(current_input, output, queries, *emb, p.value("threshold", 0.8),
                                    cfg.workers, output + ".report.jsonl");
            } else if (sc.name == "make-pairs") {
                PairingConfig pc;
                std::string strategy = p.value("strategy", std::string{"pile"});
                if (strategy != "pile" && strategy != "paper")
                    throw ConfigError("strategy must be pile or paper");
                pc.strategy =
                    strategy == "pile" ? PairStrategy::PileChunks : PairStrategy::PaperParagraphs;
                pc.chunk_budget = p.value("chunk_budget", size_t{600});
                pc.pair_budget = p.value("pair_budget", size_t{4096});
                pc.side_target = p.value("side_target", size_t{2000});
                pc.max_paragraph = p.value("max_paragraph", size_t{2000});
                std::string tok = p.value("tokenizer", std::string{"whitespace"});
                std::unique_ptr<TokenCounter> tc;
                if (tok == "whitespace") {
                    tc = whitespace_counter();
                } else if (tok == "http") {
                    if (!p.contains("endpoint"))
                        throw ConfigError("make-pairs with http tokenizer needs an endpoint");
                    tc = http_token_counter(p["endpoint"].get<std::string>());
                } else {
                    throw ConfigError("unknown tokenizer: " + tok);
                }
                m = make_pairs(current_input, output, *tc, pc);
            } else if (sc.name == "mix") {
                if (!p.contains("weights") || !p["weights"].is_object())
                    throw ConfigError("mix stage needs a weights object");
                // Split the incoming pairs file by source label, then sample.
                std::string sources_dir = output + ".sources";
                fs::create_directories(sources_dir);
                std::map<std::string, std::ofstream> outs;
                std::map<std::string, uint64_t> counts;
                for (auto& [label, w] : p["weights"].items()) {
                    outs[label].open((fs::path(sources_dir) / (label + ".jsonl")).string(),
                                     std::ios::binary);
                    counts[label] = 0;
                }
                {
                    std::ifstream in(current_input, std::ios::binary);
                    if (!in) throw ConfigError("cannot open input file: " + current_input);
                    std::string line;
                    while (std::getline(in, line)) {
                        if (line.empty()) continue;
                        nlohmann::json rec = nlohmann::json::parse(line);
                        std::string label = rec.value("source", std::string{});
                        auto it = outs.find(label);
                        if (it == outs.end())
                            throw StageError("mix: pair from source \"" + label +
                                             "\" has no configured weight");
                        it->second << line << '\n';
                        ++counts[label];
                    }
                    for (auto& [label, os] : outs) os.close();
                }
                MixSpec spec;
                spec.seed = stage_seed;
                for (auto& [label, w] : p["weights"].items()) {
                    spec.entries.push_back(
                        {label, w.get<double>(),
                         (fs::path(sources_dir) / (label + ".jsonl")).string()});
                }
                if (p.contains("total") && !p["total"].is_string())
                    spec.total = p["total"].get<uint64_t>();
                m = mix(spec, output);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            std::ofstream marker((fs::path(cfg.output_dir) / "FAILED").string(), std::ios::binary);
            marker << sc.name << '\n' << e.what() << '\n';
            throw StageError("stage " + sc.name + " failed: " + e.what());
        }

        auto elapsed = std::chrono::steady_clock::now() - start;
        m.seed = stage_seed;
        m.config_digest = digest;
        m.wall_time_ms =
            static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count());
        write_manifest(output, m);
        manifests.push_back(m);
        current_input = output;
    }

    // Top-level summary: drops aggregated by reason across stages.
    nlohmann::ordered_json summary;
    summary["config_digest"] = digest;
    summary["seed"] = cfg.seed;
    summary["stages"] = nlohmann::ordered_json::array();
    std::map<std::string, uint64_t> all_drops;
    for (const auto& m : manifests) {
        summary["stages"].push_back({{"stage", m.stage},
                                     {"docs_in", m.docs_in},
                                     {"docs_out", m.docs_out},
                                     {"docs_dropped", m.docs_dropped}});
        for (const auto& [reason, count] : m.drop_reasons) all_drops[reason] += count;
    }
    summary["drops_by_reason"] = nlohmann::ordered_json::object();
    for (const auto& [reason, count] : all_drops) summary["drops_by_reason"][reason] = count;
    std::ofstream sout((fs::path(cfg.output_dir) / "summary.json").string(), std::ios::binary);
    sout << summary.dump(2) << '\n';

    return manifests;
}

CorpusStats stats(const std::string& path, TokenCounter& tc) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);

    CorpusStats s;
    std::vector<uint64_t> token_counts;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw StageError(path + ": line " + std::to_string(line_no) + ": malformed record");

        std::string kind;
        if (j.contains("text") && j.contains("id")) {
            kind = "documents";
        } else if (j.contains("input") && j.contains("output")) {
            kind = "pairs";
        } else {
            throw StageError(path + ": line " + std::to_string(line_no) +
                             ": record is neither a document nor a pair");
        }
        if (s.kind.empty()) {
            s.kind = kind;
        } else if (s.kind != kind) {
            throw StageError(path + ": mixed record kinds (saw " + s.kind + ", then " + kind +
                             " at line " + std::to_string(line_no) + ")");
        }

        ++s.count;
        if (kind == "documents") {
            uint64_t t = tc.count(j["text"].get<std::string>());
            s.total_tokens += t;
            token_counts.push_back(t);
            ++s.per_source[j.value("source", std::string{"unknown"})];
        } else {
            uint64_t t = tc.count(j["input"].get<std::string>()) +
                         tc.count(j["output"].get<std::string>());
            s.total_tokens += t;
            token_counts.push_back(t);
            ++s.per_source[j.value("source", std::string{"unknown"})];
            ++s.pairs_per_strategy[j.value("strategy", std::string{"unknown"})];
        }
    }

    if (!token_counts.empty()) {
        s.mean_tokens = static_cast<double>(s.total_tokens) / static_cast<double>(token_counts.size());
        std::sort(token_counts.begin(), token_counts.end());
        s.median_tokens = token_counts[token_counts.size() / 2];
    }
    if (s.kind.empty()) s.kind = "documents";  // empty file: zero stats, no error
    return s;
}

std::string stats_to_json(const CorpusStats& s) {
    nlohmann::ordered_json j;
    j["kind"] = s.kind;
    j["count"] = s.count;
    j["total_tokens"] = s.total_tokens;
    j["per_source"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : s.per_source) j["per_source"][k] = v;
    j["mean_tokens"] = s.mean_tokens;
    j["median_tokens"] = s.median_tokens;
    j["pairs_per_strategy"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : s.pairs_per_strategy) j["pairs_per_strategy"][k] = v;
    return j.dump(2);
}

}  // namespace curate
