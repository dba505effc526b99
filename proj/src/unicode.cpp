#include "curate/unicode.hpp"

#include <algorithm>

namespace curate {

namespace {

#include "nfc_tables.inc"

// Hangul algorithmic constants (Unicode 3.12).
constexpr char32_t kSBase = 0xAC00, kLBase = 0x1100, kVBase = 0x1161, kTBase = 0x11A7;
constexpr int kLCount = 19, kVCount = 21, kTCount = 28;
constexpr int kNCount = kVCount * kTCount;       // 588
constexpr int kSCount = kLCount * kNCount;       // 11172

uint8_t combining_class(char32_t cp) {
    auto it = std::lower_bound(std::begin(kCcc), std::end(kCcc), cp,
                               [](const CccEntry& e, char32_t c) { return e.cp < c; });
    return (it != std::end(kCcc) && it->cp == cp) ? it->ccc : 0;
}

void decompose(char32_t cp, std::vector<char32_t>& out) {
    if (cp >= kSBase && cp < kSBase + kSCount) {
        int idx = static_cast<int>(cp - kSBase);
        out.push_back(kLBase + idx / kNCount);
        out.push_back(kVBase + (idx % kNCount) / kTCount);
        if (idx % kTCount != 0) out.push_back(kTBase + idx % kTCount);
        return;
    }
    auto it = std::lower_bound(std::begin(kDecomp), std::end(kDecomp), cp,
                               [](const DecompEntry& e, char32_t c) { return e.cp < c; });
    if (it != std::end(kDecomp) && it->cp == cp) {
        for (uint32_t i = 0; i < it->len; ++i) out.push_back(kDecompSeq[it->offset + i]);
    } else {
        out.push_back(cp);
    }
}

// Returns 0 if the pair does not compose.
char32_t compose_pair(char32_t a, char32_t b) {
    if (a >= kLBase && a < kLBase + kLCount && b >= kVBase && b < kVBase + kVCount) {
        return kSBase + ((a - kLBase) * kVCount + (b - kVBase)) * kTCount;
    }
    if (a >= kSBase && a < kSBase + kSCount && (a - kSBase) % kTCount == 0 && b > kTBase &&
        b < kTBase + kTCount) {
        return a + (b - kTBase);
    }
    auto it = std::lower_bound(std::begin(kComp), std::end(kComp), std::pair<char32_t, char32_t>{a, b},
                               [](const CompEntry& e, const std::pair<char32_t, char32_t>& p) {
                                   return e.first != p.first ? e.first < p.first : e.second < p.second;
                               });
    if (it != std::end(kComp) && it->first == a && it->second == b) return it->composed;
    return 0;
}

}  // namespace

std::vector<char32_t> utf8_decode(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        unsigned char c = s[i];
        char32_t cp = 0xFFFD;
        size_t len = 1;
        if (c < 0x80) {
            cp = c;
        } else if ((c >> 5) == 0x6 && i + 1 < s.size() && (s[i + 1] & 0xC0) == 0x80) {
            cp = (c & 0x1F) << 6 | (s[i + 1] & 0x3F);
            len = 2;
            if (cp < 0x80) cp = 0xFFFD;
        } else if ((c >> 4) == 0xE && i + 2 < s.size() && (s[i + 1] & 0xC0) == 0x80 &&
                   (s[i + 2] & 0xC0) == 0x80) {
            cp = (c & 0x0F) << 12 | (s[i + 1] & 0x3F) << 6 | (s[i + 2] & 0x3F);
            len = 3;
            if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
        } else if ((c >> 3) == 0x1E && i + 3 < s.size() && (s[i + 1] & 0xC0) == 0x80 &&
                   (s[i + 2] & 0xC0) == 0x80 && (s[i + 3] & 0xC0) == 0x80) {
            cp = (c & 0x07) << 18 | (s[i + 1] & 0x3F) << 12 | (s[i + 2] & 0x3F) << 6 | (s[i + 3] & 0x3F);
            len = 4;
            if (cp < 0x10000 || cp > 0x10FFFF) cp = 0xFFFD;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string utf8_encode(const std::vector<char32_t>& cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

std::string nfc(std::string_view s) {
    // Fast path: pure ASCII is already NFC.
    if (std::all_of(s.begin(), s.end(), [](unsigned char c) { return c < 0x80; })) {
        return std::string(s);
    }

    // Canonical decomposition.
    std::vector<char32_t> nfd;
    for (char32_t cp : utf8_decode(s)) decompose(cp, nfd);

    // Canonical ordering: stable-sort maximal nonzero-ccc runs by ccc.
    size_t i = 0;
    while (i < nfd.size()) {
        if (combining_class(nfd[i]) == 0) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < nfd.size() && combining_class(nfd[j]) != 0) ++j;
        std::stable_sort(nfd.begin() + i, nfd.begin() + j,
                         [](char32_t a, char32_t b) { return combining_class(a) < combining_class(b); });
        i = j;
    }

    // Canonical composition.
    std::vector<char32_t> out;
    out.reserve(nfd.size());
    ptrdiff_t last_starter = -1;
    uint8_t last_ccc = 0;
    for (char32_t cp : nfd) {
        uint8_t ccc = combining_class(cp);
        if (last_starter >= 0) {
            bool blocked = (last_ccc != 0 && last_ccc >= ccc);
            if (!blocked) {
                if (char32_t comp = compose_pair(out[last_starter], cp)) {
                    out[last_starter] = comp;
                    continue;
                }
            }
        }
        if (ccc == 0) {
            last_starter = static_cast<ptrdiff_t>(out.size());
            last_ccc = 0;
        } else {
            last_ccc = ccc;
        }
        out.push_back(cp);
    }
    return utf8_encode(out);
}

}  // namespace curate
