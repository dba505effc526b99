#include "curate/jsonl.hpp"

#include <json.hpp>

#include "curate/error.hpp"

namespace curate {

using ordered_json = nlohmann::ordered_json;

DocumentReader::DocumentReader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw ConfigError("cannot open input file: " + path);
}

std::optional<Document> DocumentReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        uint64_t offset = byte_offset_;
        byte_offset_ += line.size() + 1;
        ++line_no_;
        if (line.empty()) continue;

        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw StageError(path_ + ": line " + std::to_string(line_no_) + " (byte offset " +
                             std::to_string(offset) + "): malformed JSON object");
        }
        auto missing = [&](const char* field) {
            return StageError(path_ + ": line " + std::to_string(line_no_) + ": missing field " + field);
        };
        if (!j.contains("id") || !j["id"].is_number_unsigned()) throw missing("id");
        if (!j.contains("text") || !j["text"].is_string()) throw missing("text");
        if (!j.contains("source") || !j["source"].is_string()) throw missing("source");

        Document doc;
        doc.id = j["id"].get<uint64_t>();
        doc.text = j["text"].get<std::string>();
        doc.source = j["source"].get<std::string>();
        if (j.contains("meta")) {
            if (!j["meta"].is_object())
                throw StageError(path_ + ": line " + std::to_string(line_no_) + ": meta must be an object");
            for (auto& [k, v] : j["meta"].items()) {
                if (!v.is_string())
                    throw StageError(path_ + ": line " + std::to_string(line_no_) + ": meta values must be strings");
                doc.meta[k] = v.get<std::string>();
            }
        }

        auto [it, inserted] = seen_ids_.emplace(doc.id, line_no_);
        if (!inserted) {
            throw StageError(path_ + ": duplicate id " + std::to_string(doc.id) + " at line " +
                             std::to_string(line_no_) + " (first seen at line " +
                             std::to_string(it->second) + ")");
        }
        return doc;
    }
    return std::nullopt;
}

std::string document_to_json_line(const Document& doc) {
    ordered_json j;
    j["id"] = doc.id;
    j["source"] = doc.source;
    j["text"] = doc.text;
    j["meta"] = ordered_json::object();
    for (const auto& [k, v] : doc.meta) j["meta"][k] = v;
    return j.dump();
}

DocumentWriter::DocumentWriter(const std::string& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw ConfigError("cannot open output file for writing: " + path);
}

void DocumentWriter::write(const Document& doc) {
    out_ << document_to_json_line(doc) << '\n';
    if (!out_) throw StageError("write failure on " + path_);
    ++count_;
}

void DocumentWriter::close() {
    if (out_.is_open()) {
        out_.close();
        if (out_.fail()) throw StageError("write failure on close: " + path_);
    }
}

void write_manifest(const std::string& output_path, const RunManifest& m) {
    ordered_json j;
    j["stage"] = m.stage;
    j["docs_in"] = m.docs_in;
    j["docs_out"] = m.docs_out;
    j["docs_dropped"] = m.docs_dropped;
    j["drop_reasons"] = ordered_json::object();
    for (const auto& [k, v] : m.drop_reasons) j["drop_reasons"][k] = v;
    j["seed"] = m.seed;
    j["config_digest"] = m.config_digest;
    j["wall_time_ms"] = m.wall_time_ms;
    std::ofstream out(output_path + ".manifest.json", std::ios::binary);
    if (!out) throw StageError("cannot write manifest for " + output_path);
    out << j.dump(2) << '\n';
}

RunManifest read_manifest(const std::string& output_path) {
    std::ifstream in(output_path + ".manifest.json", std::ios::binary);
    if (!in) throw ConfigError("cannot read manifest for " + output_path);
    nlohmann::json j = nlohmann::json::parse(in);
    RunManifest m;
    m.stage = j.at("stage").get<std::string>();
    m.docs_in = j.at("docs_in").get<uint64_t>();
    m.docs_out = j.at("docs_out").get<uint64_t>();
    m.docs_dropped = j.at("docs_dropped").get<uint64_t>();
    for (auto& [k, v] : j.at("drop_reasons").items()) m.drop_reasons[k] = v.get<uint64_t>();
    m.seed = j.at("seed").get<uint64_t>();
    m.config_digest = j.at("config_digest").get<std::string>();
    m.wall_time_ms = j.at("wall_time_ms").get<uint64_t>();
    return m;
}

}  // namespace curate
