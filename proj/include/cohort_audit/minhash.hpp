#pragma once

// MinHash signatures over shingle sets. Row i applies the splitmix64
// finalizer to (shingle XOR key_i), where key_i is the i-th value of the
// splitmix64 stream seeded with the global seed; the row value is the
// minimum over the set. An empty set yields the all-sentinel signature
// (every row = 2^64-1), which never equals a row computed from a
// non-empty set in practice, so empty-vs-nonempty estimates are 0.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cohort_audit/shingle.hpp"

namespace cohort_audit {

inline constexpr std::uint64_t kMinHashSentinel = std::numeric_limits<std::uint64_t>::max();

// splitmix64 finalizer (Stafford mix13); bijective on 64-bit values.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// splitmix64 sequence; used to derive per-row keys from the seed.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    return mix64(state);
}

struct MinHashSignature {
    std::vector<std::uint64_t> values;
    std::uint64_t seed = 0;

    int hash_count() const { return static_cast<int>(values.size()); }
};

inline MinHashSignature minhash(const ShingleSet& set, int hash_count, std::uint64_t seed) {
    if (hash_count < 1) throw std::invalid_argument("minhash hash_count must be >= 1");
    MinHashSignature sig;
    sig.seed = seed;
    sig.values.assign(static_cast<std::size_t>(hash_count), kMinHashSentinel);
    std::uint64_t key_state = seed;
    for (int i = 0; i < hash_count; ++i) {
        const std::uint64_t key = splitmix64_next(key_state);
        std::uint64_t best = kMinHashSentinel;
        for (std::uint64_t s : set.hashes) {
            const std::uint64_t h = mix64(s ^ key);
            if (h < best) best = h;
        }
        sig.values[static_cast<std::size_t>(i)] = best;
    }
    return sig;
}

// Fraction of matching rows; unbiased estimator of Jaccard similarity.
inline double jaccard_estimate(const MinHashSignature& a, const MinHashSignature& b) {
    if (a.values.size() != b.values.size())
        throw std::invalid_argument("jaccard_estimate: signatures have different hash counts");
    if (a.seed != b.seed)
        throw std::invalid_argument("jaccard_estimate: signatures built with different seeds");
    if (a.values.empty()) return 0.0;
    std::size_t matches = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (a.values[i] == b.values[i]) ++matches;
    return static_cast<double>(matches) / static_cast<double>(a.values.size());
}

}  // namespace cohort_audit
