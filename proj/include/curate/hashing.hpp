#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace curate {

// 64-bit finalizer (splitmix64). All keyed hashing in the toolkit goes
// through this one function so a single seed reproduces every derived value.
inline uint64_t mix64(uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

inline uint64_t mix64(uint64_t x, uint64_t key) { return mix64(x ^ mix64(key)); }

// FNV-1a over bytes, strengthened with the finalizer.
uint64_t hash_bytes(std::string_view data, uint64_t seed = 0);

// 128-bit content digest (two independently-seeded 64-bit halves).
// Used for exact dedup; collisions are verified against the full text,
// so hash quality affects speed only, never correctness.
struct Digest128 {
    uint64_t hi = 0;
    uint64_t lo = 0;
    bool operator==(const Digest128&) const = default;
    std::string hex() const;
};

Digest128 digest_text(std::string_view text);

struct Digest128Hash {
    size_t operator()(const Digest128& d) const { return static_cast<size_t>(d.hi ^ mix64(d.lo)); }
};

}  // namespace curate
