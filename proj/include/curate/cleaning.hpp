#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "curate/document.hpp"

namespace curate {

struct CleaningReport {
    std::map<std::string, uint64_t> rules_fired;
    int64_t chars_removed = 0;
    uint64_t chars_inserted = 0;
    uint64_t latex_fixes = 0;

    void merge(const CleaningReport& other);
};

// Balance unescaped `$` delimiters and unmatched \begin{X} environments,
// paragraph by paragraph, by appending closers. Insertion-only.
std::pair<std::string, uint64_t> repair_latex(const std::string& text);

// Count of unescaped `$` in a string. Exposed for the delimiter-balance tests.
size_t count_unescaped_dollars(std::string_view text);

// Full rule set: NFC normalization, DOI/URL removal, bracketed numeric
// citation removal, line-break hyphenation rejoin, LaTeX repair, whitespace
// collapse. Total: never fails, degrades to best effort.
std::pair<Document, CleaningReport> clean_document(const Document& doc);

// File-to-file stage: cleans every document, dropping empty results
// ("empty_after_clean") and results under min_chars ("too_short").
RunManifest clean_stage(const std::string& input_path, const std::string& output_path,
                        size_t min_chars = 200);

}  // namespace curate
