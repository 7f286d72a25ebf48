#pragma once

// Rubric V2 scoring. Components and ceilings:
//   R1 traceable interaction 20 | R2 report structure 20
//   R3 technical performance 35 | R4 originality & authorship 25
//
// R1 is eliminatory: a missing transcript or verified time below the
// minimum zeroes R1 and invalidates the whole activity regardless of the
// other components. Invalid scores report total = 0 but keep the
// component breakdown for audit. Pass line: valid and total >= 60.
//
// R2, R3 and the review-answer share of R4 are instructor judgments read
// from a per-student marks file:
//   r2=<0..20>  r3=<0..35>  r4_review=<0..15>  notes=<free text>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohort_audit/evidence.hpp"
#include "cohort_audit/levels.hpp"
#include "cohort_audit/scs_cn.hpp"

namespace cohort_audit {

struct ManualMarks {
    double r2_structure = 0.0;           // 0..20
    double r3_technical = 0.0;           // 0..35
    double r4_review_quality = 0.0;      // 0..15
    std::string notes;
};

struct R1Result {
    double points = 0.0;
    std::optional<std::string> invalidation;
};

// Eliminatory gate first, then 10 base points plus 2 per covered module.
inline R1Result score_r1(const TranscriptEvidence& ev, const EvidenceConfig& config) {
    if (!ev.present) return {0.0, "No adjuntó el Anexo A"};
    const std::int64_t verified =
        config.gap_cap > 0 ? ev.capped_duration_min : ev.raw_duration_min;
    if (verified < config.min_minutes)
        return {0.0, "Tiempo de interacción < " + std::to_string(config.min_minutes) + " min"};
    const double points = 20.0 * (0.5 + 0.1 * static_cast<double>(ev.modules_covered.size()));
    return {std::min(points, 20.0), std::nullopt};
}

// 10 originality points scaled by personal-zone similarity (full credit
// below `medium`, fading linearly to zero at `high`), plus up to 15 for
// the review answers; -5 per certain placeholder, -10 on identity leak.
inline double score_r4(double personal_zone_max_sim, double review_answers_mark,
                       bool foreign_identity, int placeholders_certain,
                       const ThresholdConfig& thresholds = {}) {
    if (!(personal_zone_max_sim >= 0.0 && personal_zone_max_sim <= 1.0))
        throw std::invalid_argument("score_r4: similarity must be in [0, 1]");
    if (!(review_answers_mark >= 0.0 && review_answers_mark <= 15.0))
        throw std::invalid_argument("score_r4: review answers mark must be in [0, 15]");

    double originality = 0.0;
    if (personal_zone_max_sim < thresholds.medium) {
        originality = 1.0;
    } else if (personal_zone_max_sim < thresholds.high) {
        originality =
            (thresholds.high - personal_zone_max_sim) / (thresholds.high - thresholds.medium);
    }
    double points = 10.0 * originality + review_answers_mark;
    points -= 5.0 * placeholders_certain;
    if (foreign_identity) points -= 10.0;
    return std::clamp(points, 0.0, 25.0);
}

struct RubricScore {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;
    double r4 = 0.0;
    double total = 0.0;  // 0 when invalid; component breakdown retained
    bool valid = true;
    std::vector<std::string> invalidation_reasons;
    bool pass = false;
    bool manual_pending = false;

    double nominal_total() const { return r1 + r2 + r3 + r4; }
};

// Combines R1/R4 automatic results with the instructor marks. A failed
// numeric spot check deducts 5 points from R3 (floor 0). Missing marks
// mark the score "pending manual review" with zeroed R2/R3/review share.
inline RubricScore combine(const R1Result& r1, const std::optional<ManualMarks>& manual,
                           double r4, const std::optional<ScsCnCheck>& numeric_check) {
    if (manual) {
        if (!(manual->r2_structure >= 0.0 && manual->r2_structure <= 20.0))
            throw std::invalid_argument("manual mark r2 out of range [0, 20]");
        if (!(manual->r3_technical >= 0.0 && manual->r3_technical <= 35.0))
            throw std::invalid_argument("manual mark r3 out of range [0, 35]");
    }
    if (!(r4 >= 0.0 && r4 <= 25.0)) throw std::invalid_argument("r4 out of range [0, 25]");

    RubricScore score;
    score.r1 = r1.points;
    score.manual_pending = !manual.has_value();
    score.r2 = manual ? manual->r2_structure : 0.0;
    score.r3 = manual ? manual->r3_technical : 0.0;
    if (numeric_check && !numeric_check->pass) score.r3 = std::max(0.0, score.r3 - 5.0);
    score.r4 = r4;

    if (r1.invalidation) {
        score.valid = false;
        score.invalidation_reasons.push_back(*r1.invalidation);
        score.total = 0.0;
        score.pass = false;
        return score;
    }
    score.total = score.nominal_total();
    score.pass = score.total >= 60.0;
    return score;
}

// Marks file: key=value lines, '#' comments. Returns nullopt when the
// file does not exist (submission pending manual review); throws on
// malformed or out-of-range values, naming the field.
inline std::optional<ManualMarks> load_marks_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    ManualMarks marks;
    bool saw_r2 = false, saw_r3 = false, saw_review = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected key=value");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        const auto parse_range = [&](const char* field, double lo, double hi) {
            double v = 0.0;
            try {
                v = std::stod(value);
            } catch (const std::exception&) {
                throw std::runtime_error(path.string() + ": field " + field +
                                         " is not a number: '" + value + "'");
            }
            if (!(v >= lo && v <= hi))
                throw std::runtime_error(path.string() + ": field " + field + " out of range [" +
                                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
            return v;
        };
        if (key == "r2") {
            marks.r2_structure = parse_range("r2", 0.0, 20.0);
            saw_r2 = true;
        } else if (key == "r3") {
            marks.r3_technical = parse_range("r3", 0.0, 35.0);
            saw_r3 = true;
        } else if (key == "r4_review") {
            marks.r4_review_quality = parse_range("r4_review", 0.0, 15.0);
            saw_review = true;
        } else if (key == "notes") {
            marks.notes = value;
        } else {
            throw std::runtime_error(path.string() + ": unknown marks key '" + key + "'");
        }
    }
    if (!saw_r2 || !saw_r3 || !saw_review)
        throw std::runtime_error(path.string() + ": marks file must set r2, r3 and r4_review");
    return marks;
}

}  // namespace cohort_audit
