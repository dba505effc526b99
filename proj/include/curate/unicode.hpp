#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace curate {

// Decode UTF-8 to code points. Invalid byte sequences decode to U+FFFD.
std::vector<char32_t> utf8_decode(std::string_view s);
std::string utf8_encode(const std::vector<char32_t>& cps);

// Canonical composition (NFC). Table-driven from generated Unicode data,
// Hangul handled algorithmically.
std::string nfc(std::string_view s);

}  // namespace curate
