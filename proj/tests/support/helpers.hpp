#pragma once

// Shared test helpers: scratch directories, fixture writing, random
// document generation, and independent oracles (dense cosine, exact
// Jaccard, plain statistics). Oracles deliberately avoid the sparse and
// minhash code paths of the library so they can vouch for them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cohort_audit/shingle.hpp"
#include "cohort_audit/textprep.hpp"

namespace test_support {

class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("cohort_audit_" + tag + "_" + std::to_string(counter()++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

  private:
    static int& counter() {
        static int value = 0;
        return value;
    }
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

// Deterministic pseudo-word vocabulary: "w<k>qa" style tokens that survive
// normalization unchanged (no stop words, no stemmable suffixes).
inline std::string synth_word(int k) { return "term" + std::to_string(k) + "x"; }

// Random document over vocabulary [0, vocab) with `length` tokens.
inline std::string random_doc(std::mt19937_64& rng, int vocab, int length) {
    std::uniform_int_distribution<int> pick(0, vocab - 1);
    std::string text;
    for (int i = 0; i < length; ++i) {
        if (i) text.push_back(' ');
        text += synth_word(pick(rng));
    }
    return text;
}

// Exact Jaccard of two shingle sets via plain std::set operations.
inline double exact_jaccard(const cohort_audit::ShingleSet& a, const cohort_audit::ShingleSet& b) {
    std::set<std::uint64_t> sa(a.hashes.begin(), a.hashes.end());
    std::set<std::uint64_t> sb(b.hashes.begin(), b.hashes.end());
    if (sa.empty() && sb.empty()) return 1.0;
    std::size_t inter = 0;
    for (auto h : sa)
        if (sb.count(h)) ++inter;
    const std::size_t uni = sa.size() + sb.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

// Dense brute-force TF-IDF cosine oracle: recomputes document frequencies,
// idf and dense dot products directly from the token streams.
class DenseCosineOracle {
  public:
    explicit DenseCosineOracle(const std::vector<cohort_audit::TokenStream>& corpus) {
        const double n = static_cast<double>(corpus.size());
        std::map<std::string, int> df;
        for (const auto& doc : corpus) {
            std::set<std::string> seen(doc.tokens.begin(), doc.tokens.end());
            for (const auto& t : seen) ++df[t];
        }
        int col = 0;
        for (const auto& [term, count] : df) {
            columns_[term] = col++;
            idf_.push_back(std::log((1.0 + n) / (1.0 + count)) + 1.0);
        }
        for (const auto& doc : corpus) {
            std::vector<double> dense(idf_.size(), 0.0);
            for (const auto& t : doc.tokens) dense[columns_.at(t)] += 1.0;
            for (std::size_t c = 0; c < dense.size(); ++c) dense[c] *= idf_[c];
            vectors_.push_back(std::move(dense));
        }
    }

    double cosine(std::size_t i, std::size_t j) const {
        const auto& a = vectors_[i];
        const auto& b = vectors_[j];
        double dot = 0.0, na = 0.0, nb = 0.0;
        for (std::size_t c = 0; c < a.size(); ++c) {
            dot += a[c] * b[c];
            na += a[c] * a[c];
            nb += b[c] * b[c];
        }
        if (na == 0.0 || nb == 0.0) return 0.0;
        return dot / (std::sqrt(na) * std::sqrt(nb));
    }

  private:
    std::map<std::string, int> columns_;
    std::vector<double> idf_;
    std::vector<std::vector<double>> vectors_;
};

struct PlainStats {
    double mean = 0.0;
    double population_std = 0.0;
    double median = 0.0;
};

inline PlainStats plain_stats(std::vector<double> values) {
    PlainStats s;
    const double n = static_cast<double>(values.size());
    for (double v : values) s.mean += v;
    s.mean /= n;
    for (double v : values) s.population_std += (v - s.mean) * (v - s.mean);
    s.population_std = std::sqrt(s.population_std / n);
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    s.median = values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
    return s;
}

}  // namespace test_support
