#include "catch_amalgamated.hpp"

#include <filesystem>
#include <sstream>

#include "cohort_audit/pipeline.hpp"
#include "support/helpers.hpp"

using namespace cohort_audit;
using test_support::TempDir;
using test_support::write_file;

namespace {

const std::filesystem::path kDemoCohort = std::filesystem::path(FIXTURES_DIR) / "demo_cohort";

}  // namespace

TEST_CASE("demo cohort audit matches the pinned golden report") {
    Config config = Config::load((kDemoCohort / "audit.conf").string());
    const AuditOutcome outcome = audit_cohort(kDemoCohort, config);
    CHECK(outcome.exit_code == 0);
    const auto golden =
        read_text_file(std::filesystem::path(FIXTURES_DIR) / "golden" / "demo_report.json");
    REQUIRE(golden.has_value());
    CHECK(emit_json(outcome.report) == *golden);
}

TEST_CASE("run_audit writes both reports and prints the summary line") {
    TempDir out("pipeline_audit");
    Config config = Config::load((kDemoCohort / "audit.conf").string());
    config.out_dir = out.path().string();
    std::ostringstream stdout_sink, stderr_sink;
    const int code = run_audit(kDemoCohort, config, stdout_sink, stderr_sink);
    CHECK(code == 0);
    CHECK(std::filesystem::exists(out.path() / "report.json"));
    CHECK(std::filesystem::exists(out.path() / "report.md"));
    CHECK(stdout_sink.str().find("n=3") != std::string::npos);
    CHECK(stdout_sink.str().find("pass=3") != std::string::npos);

    const auto md = read_text_file(out.path() / "report.md");
    REQUIRE(md.has_value());
    CHECK(md->find("ana01") != std::string::npos);
    CHECK(md->find("## Footnotes") != std::string::npos);
}

TEST_CASE("run_audit on a missing root fails with exit 1") {
    std::ostringstream out, err;
    const int code = run_audit("/nonexistent/cohort/root", Config::load(), out, err);
    CHECK(code == 1);
    CHECK(err.str().find("error:") != std::string::npos);
}

TEST_CASE("run_evidence prints the parsed evidence as JSON") {
    TempDir dir("pipeline_evidence");
    write_file(dir.path() / "chat.txt",
               "[2025-03-10 10:00] USER: consulta\n"
               "[2025-03-10 10:17] TUTOR: respuesta\n");
    std::ostringstream out, err;
    const int code = run_evidence(dir.path() / "chat.txt", Config::load(), out, err);
    CHECK(code == 0);
    CHECK(out.str().find("\"raw_duration_min\": 17") != std::string::npos);
    CHECK(out.str().find("\"present\": true") != std::string::npos);

    SECTION("missing file exits 1") {
        std::ostringstream out2, err2;
        CHECK(run_evidence(dir.path() / "no_such.txt", Config::load(), out2, err2) == 1);
    }
    SECTION("empty file reports present=false with an anomaly") {
        write_file(dir.path() / "empty.txt", "");
        std::ostringstream out2, err2;
        CHECK(run_evidence(dir.path() / "empty.txt", Config::load(), out2, err2) == 0);
        CHECK(out2.str().find("\"present\": false") != std::string::npos);
        CHECK(out2.str().find("empty") != std::string::npos);
    }
}

TEST_CASE("run_similarity prints a findings table") {
    SECTION("single document yields an empty table") {
        TempDir dir("pipeline_sim1");
        write_file(dir.path() / "solo" / "report.txt", "texto unico de este informe");
        std::ostringstream out, err;
        CHECK(run_similarity(dir.path(), Config::load(), out, err) == 0);
        CHECK(out.str().find("pair\tscope") != std::string::npos);
        CHECK(out.str().find("full_document") == std::string::npos);
    }
    SECTION("identical documents show a copy row with cosine 1.000") {
        TempDir dir("pipeline_sim2");
        const std::string text =
            "contenido identico con muchas palabras distintas para vectorizar bien "
            "cuenca lluvia intensidad duracion recurrencia hietograma diseno";
        write_file(dir.path() / "a" / "report.txt", text);
        write_file(dir.path() / "b" / "report.txt", text);
        std::ostringstream out, err;
        CHECK(run_similarity(dir.path(), Config::load(), out, err) == 0);
        CHECK(out.str().find("a - b") != std::string::npos);
        CHECK(out.str().find("1.000") != std::string::npos);
        CHECK(out.str().find("copy") != std::string::npos);
    }
}
