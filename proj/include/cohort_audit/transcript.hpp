#pragma once

// Parser for the canonical chat-export format:
//
//   [2025-04-12 10:00] USER: pregunta...
//   [10:17] TUTOR: respuesta que puede
//       continuar en lineas siguientes
//
// A line "[<ts>] <ROLE>:" opens a message; anything else continues the
// current one. Timestamps are full ("YYYY-MM-DD HH:MM") or bare ("HH:MM",
// date carried from the previous stamped message; a bare time earlier
// than the previous stamp is taken as a midnight crossing and rolls the
// date forward one day, recording an anomaly). The parser never throws on
// malformed input: garbled lines become anomalies, because absence or
// garbling of evidence is itself evidence.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "cohort_audit/unicode.hpp"

namespace cohort_audit {

enum class Role { user, tutor, unknown };

inline std::string_view to_string(Role r) {
    switch (r) {
        case Role::user: return "user";
        case Role::tutor: return "tutor";
        case Role::unknown: return "unknown";
    }
    return "unknown";
}

struct Message {
    std::optional<std::int64_t> timestamp_min;  // minutes since civil epoch
    Role role = Role::unknown;
    std::string text;
};

struct Transcript {
    std::vector<Message> messages;
    std::vector<std::string> anomalies;
    std::string source;

    std::size_t stamped_count() const {
        std::size_t n = 0;
        for (const auto& m : messages)
            if (m.timestamp_min) ++n;
        return n;
    }
};

namespace detail {

// Howard Hinnant's civil-date algorithm; days since 1970-01-01.
inline std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

struct ParsedStamp {
    bool has_date = false;
    std::int64_t day = 0;         // valid when has_date
    std::int64_t minute_of_day = 0;
};

inline std::optional<ParsedStamp> parse_stamp(std::string_view raw) {
    static const std::regex full_re(
        R"(^\s*(\d{4})-(\d{1,2})-(\d{1,2})[ T](\d{1,2}):(\d{2})(?::\d{2})?\s*$)");
    static const std::regex bare_re(R"(^\s*(\d{1,2}):(\d{2})(?::\d{2})?\s*$)");
    std::match_results<std::string_view::const_iterator> m;
    if (std::regex_match(raw.begin(), raw.end(), m, full_re)) {
        const int year = std::stoi(m[1]);
        const int month = std::stoi(m[2]);
        const int day = std::stoi(m[3]);
        const int hour = std::stoi(m[4]);
        const int minute = std::stoi(m[5]);
        if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59)
            return std::nullopt;
        ParsedStamp out;
        out.has_date = true;
        out.day = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
        out.minute_of_day = hour * 60 + minute;
        return out;
    }
    if (std::regex_match(raw.begin(), raw.end(), m, bare_re)) {
        const int hour = std::stoi(m[1]);
        const int minute = std::stoi(m[2]);
        if (hour > 23 || minute > 59) return std::nullopt;
        ParsedStamp out;
        out.minute_of_day = hour * 60 + minute;
        return out;
    }
    return std::nullopt;
}

inline Role parse_role(std::string_view word) {
    std::string lower;
    lower.reserve(word.size());
    for (char c : word) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "user" || lower == "usuario" || lower == "estudiante" || lower == "alumno")
        return Role::user;
    if (lower == "tutor" || lower == "assistant" || lower == "ia") return Role::tutor;
    return Role::unknown;
}

}  // namespace detail

inline Transcript parse_transcript(std::string_view text) {
    static const std::regex opener_re(R"(^\s*\[([^\]]{0,64})\]\s*([A-Za-z]{1,24})\s*:\s?(.*)$)");

    Transcript out;
    std::optional<std::int64_t> prev_ts;
    bool have_current = false;
    std::size_t line_no = 0;

    const auto append_continuation = [&](std::string_view line) {
        if (!have_current) {
            if (line.find_first_not_of(" \t\r") == std::string_view::npos) return;
            out.messages.push_back({std::nullopt, Role::unknown, std::string(line)});
            have_current = true;
            return;
        }
        auto& msg = out.messages.back();
        msg.text.push_back('\n');
        msg.text.append(line);
    };

    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;

        std::match_results<std::string_view::const_iterator> m;
        if (std::regex_match(line.begin(), line.end(), m, opener_re)) {
            Message msg;
            msg.role = detail::parse_role(std::string_view(&*m[2].first, m[2].length()));
            msg.text = std::string(m[3].first, m[3].second);

            const auto stamp =
                detail::parse_stamp(std::string_view(&*m[1].first, m[1].length()));
            if (!stamp) {
                out.anomalies.push_back("line " + std::to_string(line_no) +
                                        ": unparseable timestamp, message kept without one");
            } else if (stamp->has_date) {
                const std::int64_t ts = stamp->day * 1440 + stamp->minute_of_day;
                if (prev_ts && ts < *prev_ts)
                    out.anomalies.push_back("line " + std::to_string(line_no) +
                                            ": timestamp earlier than the previous one");
                msg.timestamp_min = ts;
                prev_ts = ts;
            } else {
                const std::int64_t day = prev_ts ? detail::floor_div(*prev_ts, 1440) : 0;
                std::int64_t ts = day * 1440 + stamp->minute_of_day;
                if (prev_ts && ts < *prev_ts) {
                    ts += 1440;
                    out.anomalies.push_back("line " + std::to_string(line_no) +
                                            ": midnight crossing assumed (date rolled forward)");
                }
                msg.timestamp_min = ts;
                prev_ts = ts;
            }
            if (msg.text.empty())
                out.anomalies.push_back("line " + std::to_string(line_no) + ": empty message body");
            out.messages.push_back(std::move(msg));
            have_current = true;
        } else {
            append_continuation(line);
        }

        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return out;
}

struct SessionDuration {
    std::int64_t raw_min = 0;
    std::int64_t capped_min = 0;
};

// raw = last - first stamped timestamp; capped = sum of inter-message gaps,
// each limited to gap_cap_min. gap_cap_min <= 0 disables capping. Negative
// gaps (anomalous orderings) contribute zero, and the capped total is
// clamped to raw so capped <= raw holds on every input.
inline SessionDuration session_duration(const Transcript& t, std::int64_t gap_cap_min) {
    std::vector<std::int64_t> stamps;
    for (const auto& m : t.messages)
        if (m.timestamp_min) stamps.push_back(*m.timestamp_min);
    SessionDuration d;
    if (stamps.size() < 2) return d;
    d.raw_min = stamps.back() - stamps.front();
    if (d.raw_min < 0) d.raw_min = 0;
    if (gap_cap_min <= 0) {
        d.capped_min = d.raw_min;
        return d;
    }
    std::int64_t total = 0;
    for (std::size_t i = 1; i < stamps.size(); ++i) {
        std::int64_t gap = stamps[i] - stamps[i - 1];
        if (gap < 0) gap = 0;
        total += std::min(gap, gap_cap_min);
    }
    d.capped_min = std::min(total, d.raw_min);
    return d;
}

// Per-module detection patterns, matched (case/diacritic-folded) against
// every message; module k is covered when any message matches pattern k.
struct ModuleMarkers {
    std::vector<std::string> patterns;  // index 0 -> M1, ...

    static ModuleMarkers defaults() {
        return {{
            "m[oó]dulo\\s*1|intensidad.durac|IDR",
            "m[oó]dulo\\s*2|distribuci[oó]n temporal",
            "m[oó]dulo\\s*3|distribuci[oó]n areal",
            "m[oó]dulo\\s*4|SCS.?CN|abstraccion",
            "m[oó]dulo\\s*5|integraci[oó]n|hietograma",
        }};
    }
};

inline std::vector<int> module_coverage(const Transcript& t, const ModuleMarkers& markers) {
    std::vector<int> covered;
    for (std::size_t k = 0; k < markers.patterns.size(); ++k) {
        if (markers.patterns[k].empty()) continue;
        std::regex re(fold_string(markers.patterns[k], true),
                      std::regex::ECMAScript | std::regex::icase);
        bool hit = false;
        for (const auto& m : t.messages) {
            const std::string folded = fold_string(m.text, true);
            if (std::regex_search(folded, re)) {
                hit = true;
                break;
            }
        }
        if (hit) covered.push_back(static_cast<int>(k) + 1);
    }
    return covered;
}

}  // namespace cohort_audit
