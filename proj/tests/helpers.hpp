// Shared fixtures for the test binaries: temp dirs, corpus writers, and
// generators for texts and shingle sets with exact Jaccard similarity.
#pragma once

#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "curate/document.hpp"
#include "curate/jsonl.hpp"

namespace testutil {

// Fresh directory under the system temp root, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<uint64_t> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("curate_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_corpus(const std::string& path, const std::vector<curate::Document>& docs) {
    curate::DocumentWriter w(path);
    for (const auto& d : docs) w.write(d);
}

inline std::vector<curate::Document> read_corpus(const std::string& path) {
    curate::DocumentReader r(path);
    std::vector<curate::Document> docs;
    while (auto d = r.next()) docs.push_back(*d);
    return docs;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

// Text of `words` pseudo-words drawn from a seeded vocabulary. Distinct seeds
// give (almost surely) disjoint word streams.
inline std::string random_text(size_t words, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::ostringstream ss;
    for (size_t i = 0; i < words; ++i) {
        if (i) ss << ' ';
        uint64_t v = rng();
        ss << "w" << (v % 50000);
        if (i % 12 == 11) ss << '.';
    }
    return ss.str();
}

// Sentence-shaped filler that passes the quality heuristic.
inline std::string prose_text(size_t sentences, uint64_t seed) {
    std::mt19937_64 rng(seed);
    static const char* vocab[] = {"reactor", "thermal",  "coolant", "neutron", "fuel",
                                  "lattice", "pressure", "flux",    "assembly", "core",
                                  "moderator", "cladding", "burnup", "transient", "margin"};
    std::ostringstream ss;
    for (size_t s = 0; s < sentences; ++s) {
        size_t len = 6 + rng() % 10;
        for (size_t i = 0; i < len; ++i) {
            std::string word = vocab[rng() % 15];
            if (i == 0) word[0] = static_cast<char>(word[0] - 'a' + 'A');
            ss << word << (i + 1 == len ? "" : " ");
        }
        ss << ". ";
    }
    return ss.str();
}

}  // namespace testutil
