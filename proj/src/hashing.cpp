#include "curate/hashing.hpp"

#include <cstdio>

namespace curate {

uint64_t hash_bytes(std::string_view data, uint64_t seed) {
    uint64_t h = 0xcbf29ce484222325ULL ^ mix64(seed);
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(h);
}

Digest128 digest_text(std::string_view text) {
    return {hash_bytes(text, 0x9e3779b97f4a7c15ULL), hash_bytes(text, 0x2545f4914f6cdd1dULL)};
}

std::string Digest128::hex() const {
    char buf[33];
    std::snprintf(buf, sizeof(buf), "%016llx%016llx", static_cast<unsigned long long>(hi),
                  static_cast<unsigned long long>(lo));
    return buf;
}

}  // namespace curate
