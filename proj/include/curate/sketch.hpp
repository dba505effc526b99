#pragma once

#include <cstdint>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace curate {

enum class ShingleUnit { Word, Char };

struct ShingleSet {
    std::unordered_set<uint64_t> shingles;
    size_t k = 0;
    ShingleUnit unit = ShingleUnit::Word;
};

struct MinHashSignature {
    std::vector<uint64_t> values;
    uint64_t seed = 0;
    size_t n() const { return values.size(); }
};

// Banding parameters; n = bands * rows is enforced where signatures are cut.
struct LshParams {
    size_t bands = 20;
    size_t rows = 13;
    size_t signature_length() const { return bands * rows; }
};

// All contiguous k-grams of the text, hashed to 64 bits. Word unit lowercases
// and splits on whitespace; char unit runs over raw bytes. Texts shorter than
// k units form a single whole-text shingle.
ShingleSet shingle(std::string_view text, size_t k, ShingleUnit unit);

// Exact |S∩T| / |S∪T|.
double jaccard(const ShingleSet& a, const ShingleSet& b);

// values[i] = min over shingles of the i-th keyed hash; simulated permutations
// derived from (seed, i) alone.
MinHashSignature minhash(const ShingleSet& s, size_t n, uint64_t seed);

// Fraction of matching signature positions.
double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b);

// Probability that two documents at Jaccard similarity s share at least one
// LSH band: 1 - (1 - s^r)^b.
double lsh_collision_probability(double s, const LshParams& p);

}  // namespace curate
