#include <doctest.h>

#include <set>

#include "curate/hashing.hpp"

using namespace curate;

TEST_CASE("mix64 is a bijective finalizer: no collisions on a dense range") {
    std::set<uint64_t> seen;
    for (uint64_t i = 0; i < 10000; ++i) seen.insert(mix64(i));
    CHECK(seen.size() == 10000);
}

TEST_CASE("mix64 keyed form separates keys") {
    CHECK(mix64(42, 1) != mix64(42, 2));
    CHECK(mix64(42, 1) == mix64(42, 1));
}

TEST_CASE("hash_bytes depends on content and seed") {
    CHECK(hash_bytes("abc") == hash_bytes("abc"));
    CHECK(hash_bytes("abc") != hash_bytes("abd"));
    CHECK(hash_bytes("abc", 1) != hash_bytes("abc", 2));
    CHECK(hash_bytes("") != hash_bytes(std::string_view("\0", 1)));  // length matters
}

TEST_CASE("digest_text: equality iff equal text, stable hex form") {
    auto a = digest_text("hello world");
    auto b = digest_text("hello world");
    auto c = digest_text("hello worlds");
    CHECK(a == b);
    CHECK_FALSE(a == c);
    CHECK(a.hex().size() == 32);
    CHECK(a.hex() == b.hex());
}
