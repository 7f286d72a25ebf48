#pragma once

// Builds the 23-submission failure-profile cohort on disk:
//   - 9 reports sharing one tutor template (pairwise cosine tuned into the
//     medium band) with disjoint personal zones,
//   - 2 planted copy pairs (near-identical documents, cosine >= 0.80),
//   - 10 unrelated reports,
//   - exactly 1 transcript, 17 minutes long,
//   - placeholder leftovers in 5 reports, labeled numeric exercises in 3,
//   - marks.txt everywhere (scores are eliminated by evidence, not marks).
//
// Token vocabularies are partitioned per group so pairwise similarities
// are controlled analytically: template terms appear in all 9 template
// docs, personal terms in exactly one document.

#include <filesystem>
#include <string>
#include <vector>

#include "support/helpers.hpp"

namespace test_support {

struct Phase1Fixture {
    std::vector<std::string> template_ids;
    std::vector<std::pair<std::string, std::string>> copy_pairs;
    std::string transcript_student;
    int placeholder_reports = 0;
    int numeric_reports = 0;
};

namespace phase1_detail {

inline std::string words(int first, int count, int repeats = 1) {
    std::string out;
    for (int r = 0; r < repeats; ++r)
        for (int i = 0; i < count; ++i) {
            if (!out.empty()) out.push_back(' ');
            out += synth_word(first + i);
        }
    return out;
}

inline std::string skeleton(const std::string& resumen, const std::string& numeric,
                            const std::string& review) {
    return "Informe académico final\n\nResumen de temas: " + resumen +
           "\n\nEjercicio numérico\n" + numeric + "\n\nPreguntas de repaso\n" + review + "\n";
}

}  // namespace phase1_detail

inline Phase1Fixture build_phase1_cohort(const std::filesystem::path& root) {
    using phase1_detail::skeleton;
    using phase1_detail::words;

    Phase1Fixture fixture;
    std::string roster;

    const auto add_student = [&](const std::string& id, const std::string& report) {
        write_file(root / id / "report.txt", report);
        write_file(root / id / "marks.txt", "r2=20\nr3=35\nr4_review=15\n");
        roster += id + "\tEstudiante " + id + "\t\n";
    };

    // 9 template docs: 120 shared terms twice over (the tutor block), plus
    // 75 personal terms split across the two personal zones. With df=9 for
    // template terms and df=1 for personal ones this lands pairwise
    // cosines near 0.65, inside the medium band.
    for (int i = 0; i < 9; ++i) {
        const std::string id = "tpl" + std::to_string(10 + i);
        fixture.template_ids.push_back(id);
        const int base = 2000 + i * 100;
        const std::string report = skeleton(
            words(1000, 120, 2),
            "desarrollo " + words(base, 40),
            "respuestas " + words(base + 40, 35));
        add_student(id, report);
    }

    // 2 copy pairs: identical but for one token swap.
    for (int p = 0; p < 2; ++p) {
        const int base = 4000 + p * 500;
        const std::string content = skeleton(
            words(base, 60, 2),
            "calculo " + words(base + 100, 50),
            "respuestas " + words(base + 160, 40));
        const std::string id_a = "cop" + std::to_string(30 + 2 * p);
        const std::string id_b = "cop" + std::to_string(31 + 2 * p);
        add_student(id_a, content);
        add_student(id_b, content + " " + synth_word(base + 499));
        fixture.copy_pairs.emplace_back(id_a, id_b);
    }

    // 10 unrelated docs; 5 carry placeholder leftovers, 3 carry a labeled
    // (and wrong) numeric exercise.
    for (int i = 0; i < 10; ++i) {
        const std::string id = "uni" + std::to_string(50 + i);
        const int base = 6000 + i * 300;
        std::string numeric = "desarrollo " + words(base + 150, 40);
        if (i < 3) {
            numeric += "\nCN = 75, P = 100 mm y declaro Pe = 9" + std::to_string(i) + " mm";
            ++fixture.numeric_reports;
        }
        std::string review = "respuestas " + words(base + 200, 35);
        if (i >= 3 && i < 8) {
            review += "\n[aquí iría el tiempo] y además [completar conclusiones]";
            ++fixture.placeholder_reports;
        }
        add_student(id, skeleton(words(base, 100), numeric, review));
    }

    // the single exported chat: 17 real minutes
    fixture.transcript_student = "uni50";
    write_file(root / "uni50" / "anexo_a.txt",
               "[2025-03-10 10:00] USER: hola tutor, veamos el módulo 1\n"
               "[2025-03-10 10:17] TUTOR: de acuerdo, empecemos\n");

    write_file(root / "roster.tsv", roster);
    return fixture;
}

}  // namespace test_support
