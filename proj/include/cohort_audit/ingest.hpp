#pragma once

// Cohort ingestion. Expected layout, one directory per student:
//
//   <root>/<student_id>/report.txt   (or report.md)  -- required
//   <root>/<student_id>/anexo_a.txt                  -- optional transcript
//   <root>/<student_id>/meta.txt                     -- optional sidecar,
//       line "extraction_method=<plain|native_pdf_text|ocr>"
//
// A directory without a readable, non-empty report is kept and flagged
// unreadable so it still shows up in the cohort report.
//
// Zone segmentation: heading markers are regexes matched against a
// lowercased, diacritic-folded copy of the text (patterns are folded the
// same way, so "NUMÉRICO" and "numerico" both work). A zone runs from its
// heading to the next matched heading of any label, or end of text.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cohort_audit/unicode.hpp"

namespace cohort_audit {

enum class ExtractionMethod { plain, native_pdf_text, ocr, unknown };

inline std::string_view to_string(ExtractionMethod m) {
    switch (m) {
        case ExtractionMethod::plain: return "plain";
        case ExtractionMethod::native_pdf_text: return "native_pdf_text";
        case ExtractionMethod::ocr: return "ocr";
        case ExtractionMethod::unknown: return "unknown";
    }
    return "unknown";
}

inline std::optional<ExtractionMethod> parse_extraction_method(std::string_view s) {
    if (s == "plain") return ExtractionMethod::plain;
    if (s == "native_pdf_text") return ExtractionMethod::native_pdf_text;
    if (s == "ocr") return ExtractionMethod::ocr;
    if (s == "unknown") return ExtractionMethod::unknown;
    return std::nullopt;
}

enum class ZoneLabel { tutor_text, personal_numeric, personal_review_answers, other };

inline std::string_view to_string(ZoneLabel label) {
    switch (label) {
        case ZoneLabel::tutor_text: return "tutor_text";
        case ZoneLabel::personal_numeric: return "personal_numeric";
        case ZoneLabel::personal_review_answers: return "personal_review_answers";
        case ZoneLabel::other: return "other";
    }
    return "other";
}

// Half-open byte range [start, end) into Document::raw_text.
struct Zone {
    ZoneLabel label = ZoneLabel::other;
    std::size_t start = 0;
    std::size_t end = 0;
};

struct Document {
    std::string raw_text;
    ExtractionMethod extraction_method = ExtractionMethod::unknown;
    std::vector<Zone> zones;

    std::string zone_text(ZoneLabel label) const {
        std::string out;
        for (const auto& z : zones) {
            if (z.label != label) continue;
            if (!out.empty()) out.push_back('\n');
            out.append(raw_text, z.start, z.end - z.start);
        }
        return out;
    }
};

struct Submission {
    std::string student_id;
    Document report;
    std::optional<std::string> transcript_text;
    std::string source_dir;
    bool unreadable = false;
};

struct RosterEntry {
    std::string student_id;
    std::string full_name;
    std::vector<std::string> aliases;  // stored lowercase
};

struct Roster {
    std::vector<RosterEntry> entries;

    const RosterEntry* find(std::string_view id) const {
        for (const auto& e : entries)
            if (e.student_id == id) return &e;
        return nullptr;
    }
};

// Heading patterns per zone label, tried in order; on overlapping heading
// matches the earlier one wins.
struct ZoneMarkerConfig {
    std::vector<std::pair<ZoneLabel, std::string>> markers;

    static ZoneMarkerConfig defaults() {
        return {{
            {ZoneLabel::personal_numeric, "ejercicio num[eé]rico|c[aá]lculo propio"},
            {ZoneLabel::personal_review_answers,
             "respuestas? (a las|de) (5 )?preguntas de repaso|preguntas de repaso|"
             "respuestas? de repaso"},
            {ZoneLabel::tutor_text, "informe (acad[eé]mico )?final|resumen de temas"},
        }};
    }
};

namespace detail {

struct HeadingMatch {
    std::size_t folded_start = 0;
    std::size_t folded_end = 0;
    std::size_t order = 0;  // marker list position, for stable ties
    ZoneLabel label = ZoneLabel::other;
};

}  // namespace detail

inline Document segment_zones(Document doc, const ZoneMarkerConfig& markers) {
    doc.zones.clear();
    if (doc.raw_text.empty()) return doc;
    const FoldedText folded = fold_text(doc.raw_text, /*fold_diacritics=*/true);

    std::vector<detail::HeadingMatch> matches;
    for (std::size_t m = 0; m < markers.markers.size(); ++m) {
        const auto& [label, pattern] = markers.markers[m];
        if (pattern.empty()) continue;
        std::regex re(fold_string(pattern, true), std::regex::ECMAScript | std::regex::icase);
        auto begin = std::sregex_iterator(folded.text.begin(), folded.text.end(), re);
        for (auto it = begin; it != std::sregex_iterator(); ++it) {
            if (it->length(0) == 0) continue;
            matches.push_back({static_cast<std::size_t>(it->position(0)),
                               static_cast<std::size_t>(it->position(0) + it->length(0)), m,
                               label});
        }
    }
    std::sort(matches.begin(), matches.end(), [](const auto& a, const auto& b) {
        return a.folded_start != b.folded_start ? a.folded_start < b.folded_start
                                                : a.order < b.order;
    });

    // First match wins: drop headings starting inside an accepted heading.
    std::vector<detail::HeadingMatch> accepted;
    for (const auto& m : matches) {
        if (!accepted.empty() && m.folded_start < accepted.back().folded_end) continue;
        accepted.push_back(m);
    }

    for (std::size_t i = 0; i < accepted.size(); ++i) {
        const std::size_t start = folded.to_original(accepted[i].folded_start);
        const std::size_t end = i + 1 < accepted.size()
                                    ? folded.to_original(accepted[i + 1].folded_start)
                                    : doc.raw_text.size();
        if (start < end) doc.zones.push_back({accepted[i].label, start, end});
    }
    return doc;
}

inline std::optional<std::string> read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct LoadResult {
    std::vector<Submission> submissions;
    std::vector<std::string> warnings;
};

inline LoadResult load_cohort(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(root, ec))
        throw std::runtime_error("cohort root is not a readable directory: " + root.string());

    LoadResult result;
    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory()) dirs.push_back(entry.path());
    }
    std::sort(dirs.begin(), dirs.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    if (dirs.empty())
        result.warnings.push_back("no student subdirectories found under " + root.string());

    for (const auto& dir : dirs) {
        Submission sub;
        sub.student_id = dir.filename().string();
        sub.source_dir = dir.string();

        std::optional<std::string> report_text;
        for (const char* name : {"report.txt", "report.md"}) {
            if (auto text = read_text_file(dir / name)) {
                report_text = std::move(text);
                break;
            }
        }
        if (!report_text || report_text->empty()) {
            sub.unreadable = true;
            result.warnings.push_back("submission " + sub.student_id +
                                      ": missing or empty report file, flagged unreadable");
        } else {
            sub.report.raw_text = std::move(*report_text);
        }

        sub.transcript_text = read_text_file(dir / "anexo_a.txt");

        if (auto meta = read_text_file(dir / "meta.txt")) {
            std::istringstream lines(*meta);
            std::string line;
            while (std::getline(lines, line)) {
                if (!line.empty() && line.back() == '\r') line.pop_back();
                constexpr std::string_view key = "extraction_method=";
                if (line.rfind(key, 0) == 0) {
                    auto method = parse_extraction_method(line.substr(key.size()));
                    if (method) {
                        sub.report.extraction_method = *method;
                    } else {
                        result.warnings.push_back("submission " + sub.student_id +
                                                  ": unknown extraction_method value '" +
                                                  line.substr(key.size()) + "'");
                    }
                }
            }
        }
        result.submissions.push_back(std::move(sub));
    }
    return result;
}

// Roster file: one student per line, tab separated:
//   <student_id> \t <full_name> \t <alias1,alias2,...>
// The alias column is optional; aliases are stored lowercased.
inline Roster load_roster(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open roster file: " + path.string());
    Roster roster;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        for (;;) {
            std::size_t tab = line.find('\t', start);
            cols.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (cols.size() < 2 || cols[0].empty() || cols[1].empty())
            throw std::runtime_error("roster line " + std::to_string(line_no) +
                                     ": expected <id>\\t<full_name>[\\t<aliases>]");
        RosterEntry entry;
        entry.student_id = cols[0];
        entry.full_name = cols[1];
        if (cols.size() > 2 && !cols[2].empty()) {
            std::istringstream aliases(cols[2]);
            std::string alias;
            while (std::getline(aliases, alias, ',')) {
                if (!alias.empty()) entry.aliases.push_back(fold_string(alias, false));
            }
        }
        roster.entries.push_back(std::move(entry));
    }
    return roster;
}

}  // namespace cohort_audit
