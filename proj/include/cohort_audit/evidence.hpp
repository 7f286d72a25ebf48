#pragma once

// Evidence-of-process aggregation per submission: transcript presence,
// verified interaction time, module coverage, placeholder leftovers and
// identity leaks. The rubric's eliminatory R1 rule consumes this.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cohort_audit/detectors.hpp"
#include "cohort_audit/ingest.hpp"
#include "cohort_audit/scs_cn.hpp"
#include "cohort_audit/transcript.hpp"

namespace cohort_audit {

struct EvidenceConfig {
    std::int64_t min_minutes = 120;
    std::int64_t gap_cap = 15;  // minutes; <= 0 disables capping
    double numeric_tol = 0.05;
    ModuleMarkers modules = ModuleMarkers::defaults();
};

struct TranscriptEvidence {
    bool present = false;
    std::int64_t raw_duration_min = 0;
    std::int64_t capped_duration_min = 0;
    int message_count = 0;
    std::vector<int> modules_covered;  // sorted subset of 1..5
    std::vector<PlaceholderHit> placeholder_hits;
    std::vector<IdentityFinding> foreign_identities;
    std::vector<std::string> anomalies;

    int placeholder_certain_count() const {
        int n = 0;
        for (const auto& h : placeholder_hits)
            if (h.kind == PlaceholderKind::certain) ++n;
        return n;
    }
};

inline TranscriptEvidence build_evidence(const Submission& sub, const Roster& roster,
                                         const EvidenceConfig& config) {
    TranscriptEvidence ev;
    ev.placeholder_hits = detect_placeholders(sub.report);

    if (!sub.transcript_text) return ev;

    Transcript t = parse_transcript(*sub.transcript_text);
    ev.message_count = static_cast<int>(t.messages.size());
    ev.anomalies = t.anomalies;
    if (t.messages.empty()) {
        ev.anomalies.push_back("transcript file present but empty");
        return ev;
    }
    ev.present = true;
    const SessionDuration d = session_duration(t, config.gap_cap);
    ev.raw_duration_min = d.raw_min;
    ev.capped_duration_min = d.capped_min;
    ev.modules_covered = module_coverage(t, config.modules);
    ev.foreign_identities = detect_foreign_identity(t, sub.student_id, roster);
    return ev;
}

}  // namespace cohort_audit
