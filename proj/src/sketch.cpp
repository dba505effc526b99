#include "curate/sketch.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "curate/error.hpp"
#include "curate/hashing.hpp"

namespace curate {

namespace {

std::vector<std::string> tokenize_lower(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

}  // namespace

ShingleSet shingle(std::string_view text, size_t k, ShingleUnit unit) {
    if (k < 1) throw ConfigError("shingle size k must be >= 1");
    if (text.empty()) throw StageError("empty document");

    ShingleSet out;
    out.k = k;
    out.unit = unit;

    if (unit == ShingleUnit::Word) {
        std::vector<std::string> tokens = tokenize_lower(text);
        if (tokens.empty()) throw StageError("empty document");
        if (tokens.size() < k) {
            std::string whole = tokens[0];
            for (size_t i = 1; i < tokens.size(); ++i) whole += ' ', whole += tokens[i];
            out.shingles.insert(hash_bytes(whole));
            return out;
        }
        for (size_t i = 0; i + k <= tokens.size(); ++i) {
            std::string gram = tokens[i];
            for (size_t j = 1; j < k; ++j) gram += ' ', gram += tokens[i + j];
            out.shingles.insert(hash_bytes(gram));
        }
    } else {
        if (text.size() < k) {
            out.shingles.insert(hash_bytes(text));
            return out;
        }
        for (size_t i = 0; i + k <= text.size(); ++i) {
            out.shingles.insert(hash_bytes(text.substr(i, k)));
        }
    }
    return out;
}

double jaccard(const ShingleSet& a, const ShingleSet& b) {
    if (a.k != b.k || a.unit != b.unit) throw ConfigError("jaccard: mismatched shingle parameters");
    const auto& small = a.shingles.size() <= b.shingles.size() ? a.shingles : b.shingles;
    const auto& large = a.shingles.size() <= b.shingles.size() ? b.shingles : a.shingles;
    size_t inter = 0;
    for (uint64_t s : small) inter += large.count(s);
    size_t uni = a.shingles.size() + b.shingles.size() - inter;
    if (uni == 0) return 1.0;  // both empty sets are identical
    return static_cast<double>(inter) / static_cast<double>(uni);
}

MinHashSignature minhash(const ShingleSet& s, size_t n, uint64_t seed) {
    if (n == 0) throw ConfigError("minhash: signature length must be >= 1");
    if (s.shingles.empty()) throw StageError("minhash: empty shingle set");

    MinHashSignature sig;
    sig.seed = seed;
    sig.values.assign(n, std::numeric_limits<uint64_t>::max());

    // Per-index keys simulate independent permutations from one base seed.
    std::vector<uint64_t> keys(n);
    for (size_t i = 0; i < n; ++i) keys[i] = mix64(seed, 0x5349474e41545552ULL + i);

    for (uint64_t sh : s.shingles) {
        for (size_t i = 0; i < n; ++i) {
            uint64_t h = mix64(sh ^ keys[i]);
            if (h < sig.values[i]) sig.values[i] = h;
        }
    }
    return sig;
}

double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b) {
    if (a.n() != b.n() || a.n() == 0) throw ConfigError("estimate_jaccard: mismatched signature length");
    if (a.seed != b.seed) throw ConfigError("estimate_jaccard: mismatched signature seed");
    size_t match = 0;
    for (size_t i = 0; i < a.n(); ++i) match += a.values[i] == b.values[i];
    return static_cast<double>(match) / static_cast<double>(a.n());
}

double lsh_collision_probability(double s, const LshParams& p) {
    if (!(s >= 0.0 && s <= 1.0)) throw ConfigError("lsh_collision_probability: s must lie in [0,1]");
    if (p.bands == 0 || p.rows == 0) throw ConfigError("lsh_collision_probability: invalid params");
    return 1.0 - std::pow(1.0 - std::pow(s, static_cast<double>(p.rows)), static_cast<double>(p.bands));
}

}  // namespace curate
