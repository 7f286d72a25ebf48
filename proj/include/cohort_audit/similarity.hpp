#pragma once

// Cohort-wide similarity audit, the dual analysis:
//   (a) full-document TF-IDF cosine for every pair (brute force up to a
//       configurable cap, LSH-pruned beyond it) -- global similarity;
//   (b) zone-scoped MinHash/LSH Jaccard estimates for the personal zones
//       only -- paraphrase-robust copy detection where originality is
//       required.
//
// Findings carry the advisory level for every scored pair, including
// noise; report emitters filter. Pair ids are canonically ordered and the
// findings list is sorted, so output does not depend on input order.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cohort_audit/ingest.hpp"
#include "cohort_audit/levels.hpp"
#include "cohort_audit/lsh.hpp"
#include "cohort_audit/minhash.hpp"
#include "cohort_audit/shingle.hpp"
#include "cohort_audit/textprep.hpp"
#include "cohort_audit/tfidf.hpp"

namespace cohort_audit {

enum class SimScope { full_document, personal_numeric, personal_review_answers };

inline std::string_view to_string(SimScope scope) {
    switch (scope) {
        case SimScope::full_document: return "full_document";
        case SimScope::personal_numeric: return "personal_numeric";
        case SimScope::personal_review_answers: return "personal_review_answers";
    }
    return "full_document";
}

struct SimilarityFinding {
    std::string id_a;  // id_a < id_b (canonical pair order)
    std::string id_b;
    SimScope scope = SimScope::full_document;
    std::optional<double> cosine;   // full_document scope only
    std::optional<double> jaccard;  // personal-zone scopes
    SimLevel level = SimLevel::noise;

    double governing_score() const { return cosine ? *cosine : jaccard.value_or(0.0); }
};

struct SimilarityConfig {
    ThresholdConfig thresholds;
    int hash_count = 128;
    int lsh_bands = 32;
    int lsh_rows = 4;
    int shingle_k = 3;
    int bruteforce_cap = 500;
    std::uint64_t seed = 42;
    TextPrepConfig textprep;
};

namespace detail {

inline void sort_findings(std::vector<SimilarityFinding>& findings) {
    std::sort(findings.begin(), findings.end(),
              [](const SimilarityFinding& a, const SimilarityFinding& b) {
                  if (a.scope != b.scope) return static_cast<int>(a.scope) < static_cast<int>(b.scope);
                  if (a.id_a != b.id_a) return a.id_a < b.id_a;
                  return a.id_b < b.id_b;
              });
}

}  // namespace detail

inline std::vector<SimilarityFinding> pairwise_audit(const std::vector<Submission>& cohort,
                                                     const SimilarityConfig& config) {
    std::vector<SimilarityFinding> findings;
    const auto stopwords = build_stopword_set(config.textprep);

    // Readable submissions in id order drive every stage.
    std::vector<const Submission*> docs;
    for (const auto& sub : cohort)
        if (!sub.unreadable) docs.push_back(&sub);
    std::sort(docs.begin(), docs.end(), [](const Submission* a, const Submission* b) {
        return a->student_id < b->student_id;
    });
    if (docs.size() < 2) return findings;

    // (a) full-document cosine.
    std::vector<TokenStream> streams;
    streams.reserve(docs.size());
    for (const auto* sub : docs)
        streams.push_back(normalize(sub->report.raw_text, config.textprep, stopwords));
    const TfIdfModel model = fit_tfidf(streams);
    std::vector<TfIdfVector> vectors;
    vectors.reserve(streams.size());
    for (const auto& s : streams) vectors.push_back(vectorize(model, s));

    const auto emit_cosine = [&](std::size_t i, std::size_t j) {
        SimilarityFinding f;
        f.id_a = docs[i]->student_id;
        f.id_b = docs[j]->student_id;
        f.scope = SimScope::full_document;
        f.cosine = cosine(vectors[i], vectors[j]);
        f.level = classify_level(*f.cosine, config.thresholds);
        findings.push_back(std::move(f));
    };

    if (docs.size() <= static_cast<std::size_t>(config.bruteforce_cap)) {
        for (std::size_t i = 0; i < docs.size(); ++i)
            for (std::size_t j = i + 1; j < docs.size(); ++j) emit_cosine(i, j);
    } else {
        // Beyond the brute-force cap, restrict cosine to LSH candidates
        // over full-document shingle signatures.
        std::map<std::string, MinHashSignature> sigs;
        std::map<std::string, std::size_t> index_of;
        for (std::size_t i = 0; i < docs.size(); ++i) {
            const ShingleSet set = shingles(streams[i], config.shingle_k, config.seed);
            if (set.empty()) continue;
            sigs.emplace(docs[i]->student_id, minhash(set, config.hash_count, config.seed));
            index_of.emplace(docs[i]->student_id, i);
        }
        const LshIndex index = build_lsh(sigs, config.lsh_bands, config.lsh_rows);
        for (const auto& [a, b] : candidate_pairs(index))
            emit_cosine(index_of.at(a), index_of.at(b));
    }

    // (b) personal zones, MinHash/LSH.
    for (const SimScope scope : {SimScope::personal_numeric, SimScope::personal_review_answers}) {
        const ZoneLabel label = scope == SimScope::personal_numeric
                                    ? ZoneLabel::personal_numeric
                                    : ZoneLabel::personal_review_answers;
        std::map<std::string, MinHashSignature> sigs;
        for (const auto* sub : docs) {
            const std::string zone = sub->report.zone_text(label);
            if (zone.empty()) continue;
            const TokenStream stream = normalize(zone, config.textprep, stopwords);
            const ShingleSet set = shingles(stream, config.shingle_k, config.seed);
            if (set.empty()) continue;  // too short to audit; never a sentinel match
            sigs.emplace(sub->student_id, minhash(set, config.hash_count, config.seed));
        }
        if (sigs.size() < 2) continue;
        const LshIndex index = build_lsh(sigs, config.lsh_bands, config.lsh_rows);
        for (const auto& [a, b] : candidate_pairs(index)) {
            SimilarityFinding f;
            f.id_a = a;
            f.id_b = b;
            f.scope = scope;
            f.jaccard = jaccard_estimate(sigs.at(a), sigs.at(b));
            f.level = classify_level(*f.jaccard, config.thresholds);
            findings.push_back(std::move(f));
        }
    }

    detail::sort_findings(findings);
    return findings;
}

// Headline similarity per student: max over that student's pairwise
// full-document cosines (0 when the student has none).
inline std::map<std::string, double> headline_similarities(
    const std::vector<SimilarityFinding>& findings) {
    std::map<std::string, double> headline;
    for (const auto& f : findings) {
        if (f.scope != SimScope::full_document || !f.cosine) continue;
        auto& a = headline[f.id_a];
        a = std::max(a, *f.cosine);
        auto& b = headline[f.id_b];
        b = std::max(b, *f.cosine);
    }
    return headline;
}

// Max personal-zone similarity per student, the R4 originality input.
inline std::map<std::string, double> personal_zone_max_similarities(
    const std::vector<SimilarityFinding>& findings) {
    std::map<std::string, double> result;
    for (const auto& f : findings) {
        if (f.scope == SimScope::full_document || !f.jaccard) continue;
        auto& a = result[f.id_a];
        a = std::max(a, *f.jaccard);
        auto& b = result[f.id_b];
        b = std::max(b, *f.jaccard);
    }
    return result;
}

}  // namespace cohort_audit
