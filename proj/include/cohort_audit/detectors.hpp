#pragma once

// Failure-mode detectors for report documents and transcripts:
//   - placeholder detection ("[aquí iría el tiempo]" style template leftovers)
//   - foreign-identity detection (another student's name inside a transcript)

#include <cstddef>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "cohort_audit/ingest.hpp"
#include "cohort_audit/transcript.hpp"
#include "cohort_audit/unicode.hpp"

namespace cohort_audit {

enum class PlaceholderKind { certain, suspect };

struct PlaceholderHit {
    std::size_t start = 0;  // byte range in Document::raw_text
    std::size_t end = 0;
    std::string text;       // original matched span, brackets included
    PlaceholderKind kind = PlaceholderKind::certain;
};

namespace detail {

// Verb-like filler inside a bracketed span: a word of >= 4 letters ending
// in an infinitive/future/gerund suffix, the usual shape of template
// instructions ("completar", "describir", "iria").
inline bool has_verb_like_token(std::string_view folded_content) {
    static const std::regex verb_re(R"([a-z]{2,}(ar|er|ir|ria|ra|ndo)\b)");
    return std::regex_search(folded_content.begin(), folded_content.end(), verb_re);
}

}  // namespace detail

inline std::vector<PlaceholderHit> detect_placeholders(const Document& doc) {
    static const char* kCertainPattern =
        R"(\[(aquí|aqui|completar|insertar|todo|tbd|xxx)[^\]]*\])";
    static const std::regex bracket_re(R"(\[([^\[\]]{3,80})\])");

    const FoldedText folded = fold_text(doc.raw_text, true);
    const std::regex certain_re(fold_string(kCertainPattern, true),
                                std::regex::ECMAScript | std::regex::icase);

    std::vector<PlaceholderHit> hits;
    std::vector<std::pair<std::size_t, std::size_t>> certain_spans;
    for (auto it = std::sregex_iterator(folded.text.begin(), folded.text.end(), certain_re);
         it != std::sregex_iterator(); ++it) {
        const auto fstart = static_cast<std::size_t>(it->position(0));
        const auto fend = fstart + static_cast<std::size_t>(it->length(0));
        certain_spans.emplace_back(fstart, fend);
        const std::size_t start = folded.to_original(fstart);
        const std::size_t end = folded.to_original(fend);
        hits.push_back({start, end, doc.raw_text.substr(start, end - start),
                        PlaceholderKind::certain});
    }
    for (auto it = std::sregex_iterator(folded.text.begin(), folded.text.end(), bracket_re);
         it != std::sregex_iterator(); ++it) {
        const auto fstart = static_cast<std::size_t>(it->position(0));
        const auto fend = fstart + static_cast<std::size_t>(it->length(0));
        bool overlaps = false;
        for (const auto& [cs, ce] : certain_spans)
            if (fstart < ce && cs < fend) overlaps = true;
        if (overlaps) continue;
        const std::string content = it->str(1);
        if (!detail::has_verb_like_token(content)) continue;
        const std::size_t start = folded.to_original(fstart);
        const std::size_t end = folded.to_original(fend);
        hits.push_back({start, end, doc.raw_text.substr(start, end - start),
                        PlaceholderKind::suspect});
    }
    std::sort(hits.begin(), hits.end(),
              [](const PlaceholderHit& a, const PlaceholderHit& b) { return a.start < b.start; });
    return hits;
}

struct IdentityFinding {
    std::string other_student_id;
    std::string matched_name;
    std::size_t message_index = 0;
};

namespace detail {

// Collapses every non-word run to a single space, producing a canonical
// lowercase ASCII phrase for whole-word substring search.
inline std::string canonical_phrase(std::string_view text) {
    const std::string folded = fold_string(text, true);
    std::string out;
    out.reserve(folded.size());
    bool pending_space = false;
    std::size_t i = 0;
    while (i < folded.size()) {
        std::size_t at = i;
        char32_t cp = utf8_next(folded, i);
        if (is_word_char(cp)) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            out.append(folded, at, i - at);
        } else {
            pending_space = true;
        }
    }
    return out;
}

inline bool contains_phrase(const std::string& haystack, const std::string& needle) {
    if (needle.empty()) return false;
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        const bool left_ok = pos == 0 || haystack[pos - 1] == ' ';
        const std::size_t after = pos + needle.size();
        const bool right_ok = after == haystack.size() || haystack[after] == ' ';
        if (left_ok && right_ok) return true;
        ++pos;
    }
    return false;
}

}  // namespace detail

// Scans transcript messages for the names of roster entries other than
// the submitting student. Names and aliases are folded and matched on
// word boundaries, so an alias never fires inside a longer word.
inline std::vector<IdentityFinding> detect_foreign_identity(const Transcript& t,
                                                            std::string_view self_id,
                                                            const Roster& roster) {
    struct Needle {
        const RosterEntry* entry;
        std::string phrase;
    };
    std::vector<Needle> needles;
    for (const auto& entry : roster.entries) {
        if (entry.student_id == self_id) continue;
        if (auto phrase = detail::canonical_phrase(entry.full_name); !phrase.empty())
            needles.push_back({&entry, std::move(phrase)});
        for (const auto& alias : entry.aliases) {
            if (auto phrase = detail::canonical_phrase(alias); !phrase.empty())
                needles.push_back({&entry, std::move(phrase)});
        }
    }

    std::vector<IdentityFinding> findings;
    for (std::size_t idx = 0; idx < t.messages.size(); ++idx) {
        const std::string canonical = detail::canonical_phrase(t.messages[idx].text);
        for (const auto& needle : needles) {
            if (detail::contains_phrase(canonical, needle.phrase)) {
                findings.push_back({needle.entry->student_id, needle.phrase, idx});
            }
        }
    }
    return findings;
}

}  // namespace cohort_audit
