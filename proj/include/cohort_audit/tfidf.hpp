#pragma once

// TF-IDF with the smoothed idf convention idf(t) = ln((1+N)/(1+df(t))) + 1,
// raw term counts as tf, and L2-normalized cosine. This matches the
// de-facto default of mainstream vectorizer tooling and keeps idf > 0 for
// every term in the vocabulary.

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cohort_audit/textprep.hpp"

namespace cohort_audit {

struct TfIdfModel {
    std::map<std::string, int> vocabulary;  // term -> column index (sorted by term)
    std::vector<double> idf;                // by column index
    int doc_count = 0;
};

struct TfIdfVector {
    std::vector<std::pair<int, double>> weights;  // (column, weight), sorted by column
    double l2_norm = 0.0;
};

inline TfIdfModel fit_tfidf(std::span<const TokenStream> corpus) {
    if (corpus.empty()) throw std::invalid_argument("fit_tfidf: corpus must be non-empty");
    TfIdfModel model;
    model.doc_count = static_cast<int>(corpus.size());
    std::map<std::string, int> df;
    for (const auto& doc : corpus) {
        std::map<std::string, bool> seen;
        for (const auto& t : doc.tokens) seen.emplace(t, true);
        for (const auto& [t, _] : seen) ++df[t];
    }
    int col = 0;
    model.idf.reserve(df.size());
    for (const auto& [term, count] : df) {
        model.vocabulary.emplace(term, col++);
        model.idf.push_back(
            std::log((1.0 + model.doc_count) / (1.0 + count)) + 1.0);
    }
    return model;
}

inline TfIdfVector vectorize(const TfIdfModel& model, const TokenStream& doc) {
    std::map<int, double> counts;
    for (const auto& t : doc.tokens) {
        auto it = model.vocabulary.find(t);
        if (it != model.vocabulary.end()) counts[it->second] += 1.0;
    }
    TfIdfVector vec;
    vec.weights.reserve(counts.size());
    double norm_sq = 0.0;
    for (const auto& [col, count] : counts) {
        const double w = count * model.idf[static_cast<std::size_t>(col)];
        vec.weights.emplace_back(col, w);
        norm_sq += w * w;
    }
    vec.l2_norm = std::sqrt(norm_sq);
    return vec;
}

// Cosine similarity in [0, 1]; zero-norm vectors compare as 0 by convention.
inline double cosine(const TfIdfVector& a, const TfIdfVector& b) {
    if (a.l2_norm == 0.0 || b.l2_norm == 0.0) return 0.0;
    double dot = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.weights.size() && j < b.weights.size()) {
        const int ca = a.weights[i].first;
        const int cb = b.weights[j].first;
        if (ca == cb) {
            dot += a.weights[i].second * b.weights[j].second;
            ++i;
            ++j;
        } else if (ca < cb) {
            ++i;
        } else {
            ++j;
        }
    }
    double value = dot / (a.l2_norm * b.l2_norm);
    if (value < 0.0) value = 0.0;
    if (value > 1.0) value = 1.0;
    return value;
}

}  // namespace cohort_audit
