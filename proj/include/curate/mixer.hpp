#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curate/document.hpp"

namespace curate {

struct MixEntry {
    std::string label;
    double weight = 0.0;  // in (0,1]; all weights sum to 1
    std::string path;
};

struct MixSpec {
    std::vector<MixEntry> entries;
    uint64_t seed = 0;
    // nullopt means "exhaust": emit until every source is empty.
    std::optional<uint64_t> total;

    void validate() const;
};

MixSpec load_mix_spec(const std::string& path);

struct MixReport {
    std::map<std::string, uint64_t> drawn;      // realized per-source counts
    std::vector<std::string> exhausted_order;   // sources removed mid-run
};

// Seeded categorical sampling without replacement within sources; within a
// source, pairs are consumed in file order. A source that runs out is removed
// and the remaining weights renormalized. Unconsumed pairs are accounted as
// drops ("unconsumed:<label>"); realized counts and renormalization events
// are written to `<output>.mix_report.json`.
RunManifest mix(const MixSpec& spec, const std::string& output_path,
                MixReport* report_out = nullptr);

}  // namespace curate
