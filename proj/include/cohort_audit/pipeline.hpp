#pragma once

// End-to-end pipeline behind the CLI subcommands:
//   audit      ingest -> zones -> similarity -> evidence -> rubric -> report
//   evidence   single-transcript self check
//   similarity similarity-only run, findings table on stdout
//
// Exit codes: 0 ok, 1 usage/config/I-O error, 2 when the audit found a
// copy-level pair or an invalidated submission (scripting hook).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cohort_audit/config.hpp"
#include "cohort_audit/evidence.hpp"
#include "cohort_audit/ingest.hpp"
#include "cohort_audit/report.hpp"
#include "cohort_audit/rubric.hpp"
#include "cohort_audit/similarity.hpp"

namespace cohort_audit {

struct AuditOutcome {
    CohortReport report;
    int exit_code = 0;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<std::string> conventions_in_force(const Config& config,
                                                     std::size_t noise_suppressed) {
    std::vector<std::string> notes;
    notes.push_back("Similarity levels are advisory (traffic light for human review); only the "
                    "R4 originality rule affects points.");
    notes.push_back("Operational thresholds: noise < " + format_double(config.similarity.thresholds.noise) +
                    " <= low < " + format_double(config.similarity.thresholds.medium) +
                    " <= medium < " + format_double(config.similarity.thresholds.high) +
                    " <= high < " + format_double(config.similarity.thresholds.copy) + " <= copy.");
    notes.push_back("Headline similarity per student = max over that student's pairwise "
                    "full-document cosines.");
    if (config.evidence.gap_cap > 0)
        notes.push_back("Verified interaction time = sum of inter-message gaps capped at " +
                        std::to_string(config.evidence.gap_cap) +
                        " min each (evidence.gap_cap=0 uses the raw span instead).");
    else
        notes.push_back("Verified interaction time = raw span between first and last timestamp "
                        "(gap capping disabled).");
    notes.push_back("Eliminatory rule: missing Anexo A or verified time < " +
                    std::to_string(config.evidence.min_minutes) +
                    " min zeroes R1 and invalidates the activity; pass = valid and total >= 60.");
    notes.push_back(std::string("Cohort statistics use ") +
                    (config.stats.sample_std ? "sample" : "population") +
                    " standard deviation; invalid entries contribute their " +
                    (config.stats.invalid_totals_nominal ? "nominal component sums" : "zero totals") +
                    " to mean/median/counts (pass always requires validity).");
    notes.push_back("Numeric spot check: SCS-CN runoff recomputed from labeled P/CN values, " +
                    format_double(100.0 * config.evidence.numeric_tol) +
                    "% relative tolerance; unmatched exercises are reported as not "
                    "machine-checkable.");
    notes.push_back("Normalization: lowercase, diacritics folded, stop words dropped, light "
                    "suffix stemming (-es/-s/-a/-o while longer than 4 chars) in place of "
                    "model-based lemmatization.");
    notes.push_back(std::to_string(noise_suppressed) +
                    " noise-level pair(s) suppressed from this report.");
    return notes;
}

}  // namespace detail

inline AuditOutcome audit_cohort(const std::filesystem::path& root, const Config& config) {
    AuditOutcome outcome;

    LoadResult loaded = load_cohort(root);
    outcome.warnings = loaded.warnings;

    Roster roster;
    if (!config.roster_path.empty()) roster = load_roster(config.roster_path);

    for (auto& sub : loaded.submissions)
        if (!sub.unreadable) sub.report = segment_zones(std::move(sub.report), config.zones);

    const std::vector<SimilarityFinding> findings =
        pairwise_audit(loaded.submissions, config.similarity);
    const auto headline = headline_similarities(findings);
    const auto personal_max = personal_zone_max_similarities(findings);

    CohortReport& report = outcome.report;
    std::vector<RubricScore> scores;
    std::vector<double> headline_vec;

    for (const auto& sub : loaded.submissions) {
        StudentRow row;
        row.student_id = sub.student_id;
        row.unreadable = sub.unreadable;
        row.evidence = build_evidence(sub, roster, config.evidence);
        if (!sub.unreadable)
            row.numeric_check = verify_numeric_exercise(sub.report, config.evidence.numeric_tol);

        const std::optional<ManualMarks> marks =
            load_marks_file(std::filesystem::path(sub.source_dir) / "marks.txt");

        const R1Result r1 = score_r1(row.evidence, config.evidence);
        const auto personal_it = personal_max.find(sub.student_id);
        const double personal_sim = personal_it == personal_max.end() ? 0.0 : personal_it->second;
        const double r4 = score_r4(personal_sim, marks ? marks->r4_review_quality : 0.0,
                                   !row.evidence.foreign_identities.empty(),
                                   row.evidence.placeholder_certain_count(),
                                   config.similarity.thresholds);
        row.score = combine(r1, marks, r4, row.numeric_check);

        if (sub.unreadable) {
            row.score.valid = false;
            row.score.total = 0.0;
            row.score.pass = false;
            row.score.invalidation_reasons.push_back("Informe ilegible o ausente");
        }

        const auto headline_it = headline.find(sub.student_id);
        row.headline_similarity = headline_it == headline.end() ? 0.0 : headline_it->second;
        row.headline_level = classify_level(row.headline_similarity, config.similarity.thresholds);

        if (row.score.manual_pending) row.flags.push_back("pending manual review");
        if (row.unreadable) row.flags.push_back("unreadable report");
        if (!row.evidence.foreign_identities.empty()) row.flags.push_back("foreign identity in transcript");
        if (row.evidence.placeholder_certain_count() > 0)
            row.flags.push_back("placeholder text in report");
        if (row.numeric_check && !row.numeric_check->pass)
            row.flags.push_back("numeric exercise check failed");
        if (!row.numeric_check && !sub.unreadable)
            row.flags.push_back("numeric exercise not machine-checkable");

        scores.push_back(row.score);
        headline_vec.push_back(row.headline_similarity);
        report.rows.push_back(std::move(row));
    }

    if (!scores.empty())
        report.stats = cohort_stats(scores, headline_vec, config.similarity.thresholds.medium,
                                    config.stats);

    std::size_t noise_suppressed = 0;
    for (const auto& f : findings) {
        if (f.level == SimLevel::noise) {
            ++noise_suppressed;
            continue;
        }
        report.pairwise.push_back(f);
    }

    report.config_echo = config.echo();
    report.footnotes = detail::conventions_in_force(config, noise_suppressed);

    bool any_copy = false;
    for (const auto& f : report.pairwise)
        if (f.level == SimLevel::copy) any_copy = true;
    outcome.exit_code = (any_copy || report.stats.count_invalid > 0) ? 2 : 0;
    return outcome;
}

inline int run_audit(const std::filesystem::path& root, const Config& config,
                     std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        AuditOutcome outcome = audit_cohort(root, config);
        for (const auto& w : outcome.warnings) err << "warning: " << w << "\n";

        std::filesystem::create_directories(config.out_dir);
        const auto json_path = std::filesystem::path(config.out_dir) / "report.json";
        const auto md_path = std::filesystem::path(config.out_dir) / "report.md";
        {
            std::ofstream json_out(json_path, std::ios::binary);
            if (!json_out) throw std::runtime_error("cannot write " + json_path.string());
            json_out << emit_json(outcome.report);
        }
        {
            std::ofstream md_out(md_path, std::ios::binary);
            if (!md_out) throw std::runtime_error("cannot write " + md_path.string());
            md_out << emit_markdown(outcome.report, config.scale10);
        }

        int copy_pairs = 0;
        for (const auto& f : outcome.report.pairwise)
            if (f.level == SimLevel::copy) ++copy_pairs;
        const auto& stats = outcome.report.stats;
        int pass_count = 0;
        for (const auto& row : outcome.report.rows)
            if (row.score.pass) ++pass_count;
        char line[256];
        std::snprintf(line, sizeof(line),
                      "n=%d mean=%.1f median=%.1f pass=%d invalid=%d copy_pairs=%d -> %s",
                      stats.n, stats.mean, stats.median, pass_count, stats.count_invalid,
                      copy_pairs, json_path.string().c_str());
        out << line << "\n";
        return outcome.exit_code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int run_evidence(const std::filesystem::path& transcript_path, const Config& config,
                        std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    const auto text = read_text_file(transcript_path);
    if (!text) {
        err << "error: cannot read transcript file: " << transcript_path.string() << "\n";
        return 1;
    }
    Submission sub;
    sub.student_id = transcript_path.filename().string();
    sub.transcript_text = *text;
    const TranscriptEvidence ev = build_evidence(sub, Roster{}, config.evidence);
    out << detail::to_json(ev).dump(2) << "\n";
    return 0;
}

inline int run_similarity(const std::filesystem::path& root, const Config& config,
                          std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        LoadResult loaded = load_cohort(root);
        for (const auto& w : loaded.warnings) err << "warning: " << w << "\n";
        for (auto& sub : loaded.submissions)
            if (!sub.unreadable) sub.report = segment_zones(std::move(sub.report), config.zones);
        const auto findings = pairwise_audit(loaded.submissions, config.similarity);

        std::size_t noise = 0;
        out << "pair\tscope\tcosine\tjaccard\tlevel\n";
        for (const auto& f : findings) {
            if (f.level == SimLevel::noise) {
                ++noise;
                continue;
            }
            char cos_buf[32] = "-";
            if (f.cosine) std::snprintf(cos_buf, sizeof(cos_buf), "%.3f", *f.cosine);
            char jac_buf[32] = "-";
            if (f.jaccard) std::snprintf(jac_buf, sizeof(jac_buf), "%.3f", *f.jaccard);
            out << f.id_a << " - " << f.id_b << "\t" << to_string(f.scope) << "\t" << cos_buf
                << "\t" << jac_buf << "\t" << to_string(f.level) << "\n";
        }
        out << "(" << noise << " noise-level pair(s) suppressed)\n";
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace cohort_audit
