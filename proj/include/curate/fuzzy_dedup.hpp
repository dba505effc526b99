#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "curate/document.hpp"
#include "curate/sketch.hpp"

namespace curate {

struct BandKey {
    uint32_t band_index = 0;
    uint64_t band_digest = 0;
    bool operator==(const BandKey&) const = default;
    auto operator<=>(const BandKey&) const = default;
};

struct BandKeyHash {
    size_t operator()(const BandKey& k) const;
};

struct DuplicateEdge {
    uint64_t anchor_id = 0;
    uint64_t dup_id = 0;
    double similarity = 0.0;
};

struct DuplicateGraph {
    std::vector<uint64_t> nodes;
    std::vector<DuplicateEdge> edges;
    // Each component sorted ascending; components ordered by representative
    // (their minimum id).
    std::vector<std::vector<uint64_t>> components;
};

struct FuzzyConfig {
    size_t k = 5;
    ShingleUnit unit = ShingleUnit::Word;
    LshParams lsh;                 // 20 bands x 13 rows = n 260
    double tau = 0.8;
    double anchor_fraction = 0.10;
    uint64_t seed = 0;
    bool exact_refine = false;     // use exact shingle Jaccard during refinement
    size_t workers = 1;
};

// One digest per band; equal digests in the same band place two documents in
// the same candidate bucket.
std::vector<uint64_t> band_digests(const MinHashSignature& sig, const LshParams& p);

std::map<BandKey, std::vector<uint64_t>> build_buckets(
    const std::map<uint64_t, MinHashSignature>& sigs, const LshParams& p);

// Anchor refinement: per bucket of size >= 2, ceil(anchor_fraction * |B|)
// seeded anchors are compared against every other member; edges kept at
// similarity >= tau and deduplicated across buckets by unordered id pair.
std::vector<DuplicateEdge> refine_buckets(const std::map<BandKey, std::vector<uint64_t>>& buckets,
                                          const std::map<uint64_t, MinHashSignature>& sigs,
                                          double tau, double anchor_fraction, uint64_t seed);

// Union-find over confirmed edges; edge-free documents form singletons.
DuplicateGraph build_graph(const std::vector<DuplicateEdge>& edges,
                           const std::vector<uint64_t>& all_ids);

// Algorithm end to end over a JSONL corpus: signatures, banding, refinement,
// connected components, one representative (smallest id) per component.
// When graph_report_path is nonempty, writes one JSON line per component.
RunManifest dedup_fuzzy(const std::string& input_path, const std::string& output_path,
                        const FuzzyConfig& cfg, const std::string& graph_report_path = "",
                        DuplicateGraph* graph_out = nullptr);

}  // namespace curate
