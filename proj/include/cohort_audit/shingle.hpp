#pragma once

// Token shingling with 64-bit fingerprints. The fingerprint is FNV-1a
// over UTF-8 bytes (offset basis 0xcbf29ce484222325, prime 0x100000001b3)
// with the seed XORed into the offset basis, so signatures are
// reproducible across implementations that follow the same recipe.
// Shingle strings are the k tokens joined by the byte 0x01.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cohort_audit/textprep.hpp"

namespace cohort_audit {

inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x00000100000001b3ULL;
inline constexpr char kShingleSeparator = '\x01';

inline std::uint64_t fingerprint64(std::string_view bytes, std::uint64_t seed = 0) {
    std::uint64_t h = kFnvOffsetBasis ^ seed;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= kFnvPrime;
    }
    return h;
}

// Set of shingle fingerprints, stored sorted and deduplicated.
struct ShingleSet {
    int k = 0;
    std::vector<std::uint64_t> hashes;

    bool empty() const { return hashes.empty(); }
    std::size_t size() const { return hashes.size(); }
};

inline ShingleSet shingles(const TokenStream& stream, int k, std::uint64_t seed = 0) {
    if (k < 1) throw std::invalid_argument("shingle width k must be >= 1");
    ShingleSet set;
    set.k = k;
    const auto& toks = stream.tokens;
    if (toks.size() < static_cast<std::size_t>(k)) return set;
    set.hashes.reserve(toks.size() - k + 1);
    std::string buf;
    for (std::size_t i = 0; i + k <= toks.size(); ++i) {
        buf.clear();
        for (int j = 0; j < k; ++j) {
            if (j) buf.push_back(kShingleSeparator);
            buf.append(toks[i + j]);
        }
        set.hashes.push_back(fingerprint64(buf, seed));
    }
    std::sort(set.hashes.begin(), set.hashes.end());
    set.hashes.erase(std::unique(set.hashes.begin(), set.hashes.end()), set.hashes.end());
    return set;
}

}  // namespace cohort_audit
