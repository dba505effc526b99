#pragma once

#include <string>

#include "curate/document.hpp"

namespace curate {

// Remove byte-identical texts, keeping the smallest id per distinct text.
// Output is sorted by id. Digest collisions are verified by full-text
// comparison before anything is dropped. When report_path is nonempty, a
// JSONL report lists each dropped id with the retained id it duplicated.
RunManifest dedup_exact(const std::string& input_path, const std::string& output_path,
                        const std::string& report_path = "");

}  // namespace curate
