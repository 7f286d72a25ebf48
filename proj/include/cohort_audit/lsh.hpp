#pragma once

// Banded LSH over MinHash signatures: each signature is split into
// `bands` slices of `rows` values; a slice is fingerprinted into a bucket
// key, and documents sharing any bucket become candidate pairs. With the
// default 32x4 layout the match curve is centered near
// (1/32)^(1/4) ~ 0.42 Jaccard.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cohort_audit/minhash.hpp"

namespace cohort_audit {

struct LshIndex {
    int bands = 0;
    int rows = 0;
    // One bucket table per band: slice fingerprint -> doc ids.
    std::vector<std::unordered_map<std::uint64_t, std::vector<std::string>>> buckets;
};

inline LshIndex build_lsh(const std::map<std::string, MinHashSignature>& signatures, int bands,
                          int rows) {
    if (bands < 1 || rows < 1) throw std::invalid_argument("lsh: bands and rows must be >= 1");
    LshIndex index;
    index.bands = bands;
    index.rows = rows;
    index.buckets.resize(static_cast<std::size_t>(bands));
    for (const auto& [id, sig] : signatures) {
        if (sig.hash_count() != bands * rows)
            throw std::invalid_argument("lsh: bands*rows must equal the signature hash count");
        for (int b = 0; b < bands; ++b) {
            const char* slice = reinterpret_cast<const char*>(sig.values.data()) +
                                static_cast<std::size_t>(b) * rows * sizeof(std::uint64_t);
            const std::uint64_t key = fingerprint64(
                std::string_view(slice, static_cast<std::size_t>(rows) * sizeof(std::uint64_t)),
                static_cast<std::uint64_t>(b) + 1);
            index.buckets[static_cast<std::size_t>(b)][key].push_back(id);
        }
    }
    return index;
}

// All unordered pairs co-bucketed in at least one band, canonically
// ordered (first < second) and deduplicated.
inline std::vector<std::pair<std::string, std::string>> candidate_pairs(const LshIndex& index) {
    std::map<std::pair<std::string, std::string>, bool> seen;
    for (const auto& table : index.buckets) {
        for (const auto& [key, ids] : table) {
            for (std::size_t i = 0; i < ids.size(); ++i) {
                for (std::size_t j = i + 1; j < ids.size(); ++j) {
                    auto pair = ids[i] < ids[j] ? std::make_pair(ids[i], ids[j])
                                                : std::make_pair(ids[j], ids[i]);
                    if (pair.first != pair.second) seen.emplace(std::move(pair), true);
                }
            }
        }
    }
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(seen.size());
    for (auto& [pair, _] : seen) out.push_back(pair);
    return out;
}

}  // namespace cohort_audit
