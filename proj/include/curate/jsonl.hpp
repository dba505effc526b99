#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_map>

#include "curate/document.hpp"

namespace curate {

// Lazy line-by-line reader of the JSONL document format. Holds one record
// at a time; duplicate ids are detected incrementally.
class DocumentReader {
public:
    explicit DocumentReader(const std::string& path);

    // Next document in file order, or nullopt at end of file.
    // Throws StageError on malformed lines or duplicate ids.
    std::optional<Document> next();

    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ifstream in_;
    uint64_t line_no_ = 0;
    uint64_t byte_offset_ = 0;
    std::unordered_map<uint64_t, uint64_t> seen_ids_;  // id -> line number
};

// Exclusive writer; one JSON object per line with keys in fixed order
// (id, source, text, meta).
class DocumentWriter {
public:
    explicit DocumentWriter(const std::string& path);
    void write(const Document& doc);
    uint64_t count() const { return count_; }
    void close();

private:
    std::string path_;
    std::ofstream out_;
    uint64_t count_ = 0;
};

// Serialize one document to its canonical JSONL line (no trailing newline).
std::string document_to_json_line(const Document& doc);

// Manifest sidecar: `<output>.manifest.json`.
void write_manifest(const std::string& output_path, const RunManifest& m);
RunManifest read_manifest(const std::string& output_path);

}  // namespace curate
