#include "catch_amalgamated.hpp"

#include "cohort_audit/evidence.hpp"

using namespace cohort_audit;

namespace {

Roster two_student_roster() {
    Roster roster;
    roster.entries.push_back({"s01", "Lucas Ibarra", {}});
    roster.entries.push_back({"s02", "Mario Ezequiel Roldan", {}});
    return roster;
}

}  // namespace

TEST_CASE("build_evidence: missing transcript means present=false, counters zero") {
    Submission sub;
    sub.student_id = "s01";
    sub.report.raw_text = "informe sin anexo [aquí iría el tiempo]";
    const TranscriptEvidence ev = build_evidence(sub, two_student_roster(), EvidenceConfig{});
    CHECK(!ev.present);
    CHECK(ev.raw_duration_min == 0);
    CHECK(ev.capped_duration_min == 0);
    CHECK(ev.message_count == 0);
    CHECK(ev.modules_covered.empty());
    CHECK(ev.foreign_identities.empty());
    // report-side detectors still run
    CHECK(ev.placeholder_certain_count() == 1);
}

TEST_CASE("build_evidence: full transcript aggregates every detector") {
    Submission sub;
    sub.student_id = "s01";
    sub.report.raw_text = "informe completo";
    sub.transcript_text =
        "[2025-05-12 09:00] USER: módulo 1, curva IDR local\n"
        "[2025-05-12 09:14] TUTOR: módulo 2, distribución temporal\n"
        "[2025-05-12 09:28] USER: módulo 3, distribución areal\n"
        "[2025-05-12 09:42] TUTOR: módulo 4, SCS-CN\n"
        "[2025-05-12 09:56] USER: módulo 5: revisemos el caso de Mario Ezequiel Roldan\n"
        "[2025-05-12 11:10] TUTOR: ese ejercicio no es tuyo\n";
    const TranscriptEvidence ev = build_evidence(sub, two_student_roster(), EvidenceConfig{});
    CHECK(ev.present);
    CHECK(ev.message_count == 6);
    CHECK(ev.raw_duration_min == 130);
    CHECK(ev.capped_duration_min == 4 * 14 + 15);  // last 74-minute gap capped
    CHECK(ev.modules_covered == std::vector<int>{1, 2, 3, 4, 5});
    REQUIRE(ev.foreign_identities.size() == 1);
    CHECK(ev.foreign_identities[0].other_student_id == "s02");
    CHECK(ev.foreign_identities[0].message_index == 4);
}

TEST_CASE("build_evidence: transcript file present but empty") {
    Submission sub;
    sub.student_id = "s01";
    sub.report.raw_text = "informe";
    sub.transcript_text = "";
    const TranscriptEvidence ev = build_evidence(sub, Roster{}, EvidenceConfig{});
    CHECK(!ev.present);
    REQUIRE(!ev.anomalies.empty());
    CHECK(ev.anomalies.back().find("empty") != std::string::npos);
}
