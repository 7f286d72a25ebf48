// cohort-audit: batch audit of AI-tutor coursework submissions.
//
//   cohort-audit audit <root> [--config <path>] [--out <dir>] [--scale-10]
//   cohort-audit evidence <file> [--config <path>]
//   cohort-audit similarity <root> [--config <path>]

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cohort_audit/cohort_audit.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Batch audit toolkit for AI-tutor coursework submissions"};
    app.require_subcommand(1);

    std::string config_path;
    std::string root;
    std::string out_dir;
    std::string transcript_file;
    bool scale10 = false;

    auto* audit = app.add_subcommand("audit", "Run the full audit pipeline over a cohort");
    audit->add_option("root", root, "Cohort root directory (one subdirectory per student)")
        ->required();
    audit->add_option("--config", config_path, "Config file (key=value lines)");
    audit->add_option("--out", out_dir, "Output directory for report.json / report.md");
    audit->add_flag("--scale-10", scale10, "Render totals on the homologated 10-point scale");

    auto* evidence = app.add_subcommand("evidence", "Parse one transcript and print its evidence");
    evidence->add_option("file", transcript_file, "Transcript file (Anexo A export)")->required();
    evidence->add_option("--config", config_path, "Config file (key=value lines)");

    auto* similarity = app.add_subcommand("similarity", "Similarity-only run over a cohort");
    similarity->add_option("root", root, "Cohort root directory")->required();
    similarity->add_option("--config", config_path, "Config file (key=value lines)");

    CLI11_PARSE(app, argc, argv);

    cohort_audit::Config config;
    try {
        config = cohort_audit::Config::load(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (audit->parsed()) {
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (scale10) config.scale10 = true;
        return cohort_audit::run_audit(root, config);
    }
    if (evidence->parsed()) return cohort_audit::run_evidence(transcript_file, config);
    if (similarity->parsed()) return cohort_audit::run_similarity(root, config);
    return 1;
}
