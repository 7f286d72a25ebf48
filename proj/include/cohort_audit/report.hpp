#pragma once

// Cohort aggregation and report emission (report.json / report.md).
//
// Statistics conventions, both surfaced in the report footnotes:
//   - std: population (divisor n) by default; sample (n-1) behind a switch.
//   - invalid entries contribute their nominal component sum (r1+..+r4)
//     to mean/std/median and the >=60/>=90 counts by default ("nominal"),
//     matching the source reporting where component means add up to the
//     cohort mean; the "zero" switch counts them as 0 instead. Pass
//     status always requires validity, whatever the convention.
//
// emit_json output is byte-stable for identical inputs: ordered fields,
// shortest-round-trip doubles, no timestamps.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cohort_audit/evidence.hpp"
#include "cohort_audit/levels.hpp"
#include "cohort_audit/rubric.hpp"
#include "cohort_audit/scs_cn.hpp"
#include "cohort_audit/similarity.hpp"

namespace cohort_audit {

struct StatsConvention {
    bool sample_std = false;            // population by default
    bool invalid_totals_nominal = true; // "nominal" vs "zero"
};

struct ComponentMeans {
    double r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0;
};

struct CohortStats {
    int n = 0;
    double mean = 0.0;
    double std_dev = 0.0;
    double median = 0.0;
    int count_ge_90 = 0;
    int count_ge_60 = 0;
    int count_invalid = 0;
    double share_sim_ge_medium = 0.0;
    ComponentMeans component_means;
};

inline double reported_total(const RubricScore& score, const StatsConvention& conv) {
    if (score.valid) return score.total;
    return conv.invalid_totals_nominal ? score.nominal_total() : score.total;
}

// headline_sims runs parallel to scores (missing entries count as 0).
inline CohortStats cohort_stats(const std::vector<RubricScore>& scores,
                                const std::vector<double>& headline_sims,
                                double medium_threshold = 0.45,
                                const StatsConvention& conv = {}) {
    if (scores.empty()) throw std::invalid_argument("cohort_stats: empty score list");
    CohortStats stats;
    stats.n = static_cast<int>(scores.size());

    std::vector<double> totals;
    totals.reserve(scores.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const auto& s = scores[i];
        const double t = reported_total(s, conv);
        totals.push_back(t);
        sum += t;
        if (t >= 90.0) ++stats.count_ge_90;
        if (t >= 60.0) ++stats.count_ge_60;
        if (!s.valid) ++stats.count_invalid;
        stats.component_means.r1 += s.r1;
        stats.component_means.r2 += s.r2;
        stats.component_means.r3 += s.r3;
        stats.component_means.r4 += s.r4;
        const double sim = i < headline_sims.size() ? headline_sims[i] : 0.0;
        if (sim >= medium_threshold) stats.share_sim_ge_medium += 1.0;
    }
    const double n = static_cast<double>(stats.n);
    stats.mean = sum / n;
    stats.component_means.r1 /= n;
    stats.component_means.r2 /= n;
    stats.component_means.r3 /= n;
    stats.component_means.r4 /= n;
    stats.share_sim_ge_medium /= n;

    double sq = 0.0;
    for (double t : totals) sq += (t - stats.mean) * (t - stats.mean);
    const double divisor = conv.sample_std ? std::max(1.0, n - 1.0) : n;
    stats.std_dev = std::sqrt(sq / divisor);

    std::sort(totals.begin(), totals.end());
    const std::size_t mid = totals.size() / 2;
    stats.median = totals.size() % 2 == 1 ? totals[mid] : (totals[mid - 1] + totals[mid]) / 2.0;
    return stats;
}

struct StudentRow {
    std::string student_id;
    bool unreadable = false;
    RubricScore score;
    TranscriptEvidence evidence;
    std::optional<ScsCnCheck> numeric_check;
    double headline_similarity = 0.0;
    SimLevel headline_level = SimLevel::noise;
    std::vector<std::string> flags;
};

struct CohortReport {
    std::vector<StudentRow> rows;  // sorted by student_id
    CohortStats stats;
    std::vector<SimilarityFinding> pairwise;  // level >= low
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<std::string> footnotes;
};

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const RubricScore& s) {
    return ordered_json{{"r1", s.r1},
                        {"r2", s.r2},
                        {"r3", s.r3},
                        {"r4", s.r4},
                        {"total", s.total},
                        {"valid", s.valid},
                        {"pass", s.pass},
                        {"manual_pending", s.manual_pending},
                        {"invalidation_reasons", s.invalidation_reasons}};
}

inline RubricScore rubric_from_json(const ordered_json& j) {
    RubricScore s;
    s.r1 = j.at("r1");
    s.r2 = j.at("r2");
    s.r3 = j.at("r3");
    s.r4 = j.at("r4");
    s.total = j.at("total");
    s.valid = j.at("valid");
    s.pass = j.at("pass");
    s.manual_pending = j.at("manual_pending");
    s.invalidation_reasons = j.at("invalidation_reasons").get<std::vector<std::string>>();
    return s;
}

inline ordered_json to_json(const TranscriptEvidence& ev) {
    ordered_json placeholders = ordered_json::array();
    for (const auto& h : ev.placeholder_hits)
        placeholders.push_back(ordered_json{
            {"start", h.start},
            {"end", h.end},
            {"text", h.text},
            {"kind", h.kind == PlaceholderKind::certain ? "certain" : "suspect"}});
    ordered_json identities = ordered_json::array();
    for (const auto& f : ev.foreign_identities)
        identities.push_back(ordered_json{{"student_id", f.other_student_id},
                                          {"matched_name", f.matched_name},
                                          {"message_index", f.message_index}});
    ordered_json modules = ordered_json::array();
    for (int m : ev.modules_covered) modules.push_back("M" + std::to_string(m));
    return ordered_json{{"present", ev.present},
                        {"raw_duration_min", ev.raw_duration_min},
                        {"capped_duration_min", ev.capped_duration_min},
                        {"message_count", ev.message_count},
                        {"modules_covered", modules},
                        {"placeholders", placeholders},
                        {"foreign_identities", identities},
                        {"anomalies", ev.anomalies}};
}

inline TranscriptEvidence evidence_from_json(const ordered_json& j) {
    TranscriptEvidence ev;
    ev.present = j.at("present");
    ev.raw_duration_min = j.at("raw_duration_min");
    ev.capped_duration_min = j.at("capped_duration_min");
    ev.message_count = j.at("message_count");
    for (const auto& m : j.at("modules_covered"))
        ev.modules_covered.push_back(std::stoi(m.get<std::string>().substr(1)));
    for (const auto& p : j.at("placeholders")) {
        PlaceholderHit hit;
        hit.start = p.at("start");
        hit.end = p.at("end");
        hit.text = p.at("text");
        hit.kind = p.at("kind") == "certain" ? PlaceholderKind::certain : PlaceholderKind::suspect;
        ev.placeholder_hits.push_back(std::move(hit));
    }
    for (const auto& f : j.at("foreign_identities")) {
        IdentityFinding fi;
        fi.other_student_id = f.at("student_id");
        fi.matched_name = f.at("matched_name");
        fi.message_index = f.at("message_index");
        ev.foreign_identities.push_back(std::move(fi));
    }
    ev.anomalies = j.at("anomalies").get<std::vector<std::string>>();
    return ev;
}

inline SimLevel level_from_string(std::string_view s) {
    if (s == "copy") return SimLevel::copy;
    if (s == "high") return SimLevel::high;
    if (s == "medium") return SimLevel::medium;
    if (s == "low") return SimLevel::low;
    return SimLevel::noise;
}

inline SimScope scope_from_string(std::string_view s) {
    if (s == "personal_numeric") return SimScope::personal_numeric;
    if (s == "personal_review_answers") return SimScope::personal_review_answers;
    return SimScope::full_document;
}

}  // namespace detail

inline std::string emit_json(const CohortReport& report) {
    using detail::ordered_json;
    ordered_json j;
    j["schema"] = "cohort-audit-report/1";

    ordered_json config = ordered_json::object();
    for (const auto& [key, value] : report.config_echo) config[key] = value;
    j["config"] = std::move(config);

    j["stats"] = ordered_json{
        {"n", report.stats.n},
        {"mean", report.stats.mean},
        {"std", report.stats.std_dev},
        {"median", report.stats.median},
        {"count_ge_90", report.stats.count_ge_90},
        {"count_ge_60", report.stats.count_ge_60},
        {"count_invalid", report.stats.count_invalid},
        {"share_sim_ge_medium", report.stats.share_sim_ge_medium},
        {"component_means", ordered_json{{"r1", report.stats.component_means.r1},
                                         {"r2", report.stats.component_means.r2},
                                         {"r3", report.stats.component_means.r3},
                                         {"r4", report.stats.component_means.r4}}}};

    ordered_json rows = ordered_json::array();
    for (const auto& row : report.rows) {
        ordered_json r;
        r["student_id"] = row.student_id;
        r["unreadable"] = row.unreadable;
        r["score"] = detail::to_json(row.score);
        r["evidence"] = detail::to_json(row.evidence);
        if (row.numeric_check) {
            r["numeric_check"] = ordered_json{
                {"precipitation_mm", row.numeric_check->precipitation_mm},
                {"curve_number", row.numeric_check->curve_number},
                {"claimed_runoff_mm", row.numeric_check->claimed_runoff_mm},
                {"computed_runoff_mm", row.numeric_check->computed_runoff_mm},
                {"pass", row.numeric_check->pass}};
        } else {
            r["numeric_check"] = nullptr;
        }
        r["headline_similarity"] = row.headline_similarity;
        r["headline_level"] = std::string(to_string(row.headline_level));
        r["flags"] = row.flags;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);

    ordered_json pairwise = ordered_json::array();
    for (const auto& f : report.pairwise) {
        ordered_json p;
        p["id_a"] = f.id_a;
        p["id_b"] = f.id_b;
        p["scope"] = std::string(to_string(f.scope));
        p["cosine"] = f.cosine ? ordered_json(*f.cosine) : ordered_json(nullptr);
        p["jaccard"] = f.jaccard ? ordered_json(*f.jaccard) : ordered_json(nullptr);
        p["level"] = std::string(to_string(f.level));
        pairwise.push_back(std::move(p));
    }
    j["pairwise"] = std::move(pairwise);
    j["footnotes"] = report.footnotes;

    return j.dump(2) + "\n";
}

inline CohortReport parse_report_json(std::string_view bytes) {
    using detail::ordered_json;
    const ordered_json j = ordered_json::parse(bytes);
    CohortReport report;

    for (const auto& [key, value] : j.at("config").items())
        report.config_echo.emplace_back(key, value.get<std::string>());

    const auto& s = j.at("stats");
    report.stats.n = s.at("n");
    report.stats.mean = s.at("mean");
    report.stats.std_dev = s.at("std");
    report.stats.median = s.at("median");
    report.stats.count_ge_90 = s.at("count_ge_90");
    report.stats.count_ge_60 = s.at("count_ge_60");
    report.stats.count_invalid = s.at("count_invalid");
    report.stats.share_sim_ge_medium = s.at("share_sim_ge_medium");
    report.stats.component_means.r1 = s.at("component_means").at("r1");
    report.stats.component_means.r2 = s.at("component_means").at("r2");
    report.stats.component_means.r3 = s.at("component_means").at("r3");
    report.stats.component_means.r4 = s.at("component_means").at("r4");

    for (const auto& r : j.at("rows")) {
        StudentRow row;
        row.student_id = r.at("student_id");
        row.unreadable = r.at("unreadable");
        row.score = detail::rubric_from_json(r.at("score"));
        row.evidence = detail::evidence_from_json(r.at("evidence"));
        if (!r.at("numeric_check").is_null()) {
            const auto& nc = r.at("numeric_check");
            ScsCnCheck check;
            check.precipitation_mm = nc.at("precipitation_mm");
            check.curve_number = nc.at("curve_number");
            check.claimed_runoff_mm = nc.at("claimed_runoff_mm");
            check.computed_runoff_mm = nc.at("computed_runoff_mm");
            check.pass = nc.at("pass");
            row.numeric_check = check;
        }
        row.headline_similarity = r.at("headline_similarity");
        row.headline_level = detail::level_from_string(r.at("headline_level").get<std::string>());
        row.flags = r.at("flags").get<std::vector<std::string>>();
        report.rows.push_back(std::move(row));
    }

    for (const auto& p : j.at("pairwise")) {
        SimilarityFinding f;
        f.id_a = p.at("id_a");
        f.id_b = p.at("id_b");
        f.scope = detail::scope_from_string(p.at("scope").get<std::string>());
        if (!p.at("cosine").is_null()) f.cosine = p.at("cosine").get<double>();
        if (!p.at("jaccard").is_null()) f.jaccard = p.at("jaccard").get<double>();
        f.level = detail::level_from_string(p.at("level").get<std::string>());
        report.pairwise.push_back(std::move(f));
    }
    report.footnotes = j.at("footnotes").get<std::vector<std::string>>();
    return report;
}

namespace detail {

inline std::string fmt(double v, int decimals = 2) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

}  // namespace detail

// Human report: cohort stats, per-student table, pairwise flags at level
// medium and above, and the conventions in force. scale10 renders totals
// on the homologated 10-point scale.
inline std::string emit_markdown(const CohortReport& report, bool scale10 = false) {
    const double scale = scale10 ? 10.0 : 1.0;
    const int dec = scale10 ? 2 : 1;
    std::string md;
    md += "# Cohort audit report\n\n";

    md += "## Cohort statistics\n\n";
    md += "| n | mean | std | median | >=90 | >=60 | invalid | share sim >= medium |\n";
    md += "|---|------|-----|--------|------|------|---------|---------------------|\n";
    md += "| " + std::to_string(report.stats.n) + " | " + detail::fmt(report.stats.mean / scale, dec) +
          " | " + detail::fmt(report.stats.std_dev / scale, dec) + " | " +
          detail::fmt(report.stats.median / scale, dec) + " | " +
          std::to_string(report.stats.count_ge_90) + " | " +
          std::to_string(report.stats.count_ge_60) + " | " +
          std::to_string(report.stats.count_invalid) + " | " +
          detail::fmt(100.0 * report.stats.share_sim_ge_medium, 1) + "% |\n";
    md += "| component means | R1 " + detail::fmt(report.stats.component_means.r1 / scale, dec) +
          " | R2 " + detail::fmt(report.stats.component_means.r2 / scale, dec) + " | R3 " +
          detail::fmt(report.stats.component_means.r3 / scale, dec) + " | R4 " +
          detail::fmt(report.stats.component_means.r4 / scale, dec) + " | | | |\n\n";

    md += "## Students\n\n";
    md += "| student | total | pass | R1 | R2 | R3 | R4 | transcript | minutes (capped) | modules "
          "| headline sim | level | notes |\n";
    md += "|---------|-------|------|----|----|----|----|------------|------------------|---------"
          "|--------------|-------|-------|\n";
    for (const auto& row : report.rows) {
        std::string modules;
        for (int m : row.evidence.modules_covered) {
            if (!modules.empty()) modules += " ";
            modules += "M" + std::to_string(m);
        }
        std::string notes;
        for (const auto& reason : row.score.invalidation_reasons) {
            if (!notes.empty()) notes += "; ";
            notes += reason;
        }
        for (const auto& flag : row.flags) {
            if (!notes.empty()) notes += "; ";
            notes += flag;
        }
        md += "| " + row.student_id + " | " + detail::fmt(row.score.total / scale, dec) + " | " +
              (row.score.pass ? "yes" : "no") + " | " + detail::fmt(row.score.r1 / scale, dec) +
              " | " + detail::fmt(row.score.r2 / scale, dec) + " | " +
              detail::fmt(row.score.r3 / scale, dec) + " | " +
              detail::fmt(row.score.r4 / scale, dec) + " | " +
              (row.evidence.present ? "yes" : "no") + " | " +
              std::to_string(row.evidence.capped_duration_min) + " | " + modules + " | " +
              detail::fmt(row.headline_similarity, 3) + " | " +
              std::string(to_string(row.headline_level)) + " | " + notes + " |\n";
    }
    md += "\n";

    md += "## Pairwise similarity flags (medium and above)\n\n";
    md += "| pair | scope | cosine | jaccard | level |\n";
    md += "|------|-------|--------|---------|-------|\n";
    for (const auto& f : report.pairwise) {
        if (f.level < SimLevel::medium) continue;
        md += "| " + f.id_a + " - " + f.id_b + " | " + std::string(to_string(f.scope)) + " | " +
              (f.cosine ? detail::fmt(*f.cosine, 3) : std::string("-")) + " | " +
              (f.jaccard ? detail::fmt(*f.jaccard, 3) : std::string("-")) + " | " +
              std::string(to_string(f.level)) + " |\n";
    }
    md += "\n";

    md += "## Footnotes\n\n";
    for (const auto& note : report.footnotes) md += "- " + note + "\n";
    return md;
}

}  // namespace cohort_audit
