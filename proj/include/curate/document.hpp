#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace curate {

// Canonical source labels. Anything else is treated as a custom label.
namespace source {
inline constexpr const char* kScientificPapers = "scientific_papers";
inline constexpr const char* kPileRelevant = "pile_relevant";
inline constexpr const char* kPileGeneral = "pile_general";
}  // namespace source

// One corpus record. ids are caller-assigned and must be unique per stream.
struct Document {
    uint64_t id = 0;
    std::string text;
    std::string source;
    std::map<std::string, std::string> meta;

    bool operator==(const Document&) const = default;
};

// Per-stage accounting, written as a sidecar next to each stage output.
struct RunManifest {
    std::string stage;
    uint64_t docs_in = 0;
    uint64_t docs_out = 0;
    uint64_t docs_dropped = 0;
    std::map<std::string, uint64_t> drop_reasons;
    uint64_t seed = 0;
    std::string config_digest;
    uint64_t wall_time_ms = 0;

    void drop(const std::string& reason) {
        ++docs_dropped;
        ++drop_reasons[reason];
    }
};

}  // namespace curate
