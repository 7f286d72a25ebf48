#pragma once

// SCS curve-number runoff, the one machine-checked computation:
//   S  = 25400/CN - 254            [mm]
//   Ia = 0.2 * S
//   Q  = (P - Ia)^2 / (P - Ia + S)  for P > Ia, else 0
//
// verify_numeric_exercise() extracts (P, CN, claimed Q) from the
// personal_numeric zone of a report and recomputes Q; labels follow the
// deliverable convention "P = <num> mm", "CN = <num>", "Q|Pe = <num> mm"
// (decimal comma accepted).

#include <algorithm>
#include <cmath>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>

#include "cohort_audit/ingest.hpp"
#include "cohort_audit/unicode.hpp"

namespace cohort_audit {

inline double scs_cn_runoff(double precipitation_mm, double curve_number) {
    if (!(curve_number > 0.0 && curve_number <= 100.0))
        throw std::invalid_argument("scs_cn_runoff: curve number must be in (0, 100]");
    if (!(precipitation_mm >= 0.0))
        throw std::invalid_argument("scs_cn_runoff: precipitation must be >= 0");
    const double s = 25400.0 / curve_number - 254.0;
    const double ia = 0.2 * s;
    if (precipitation_mm <= ia) return 0.0;
    const double q = (precipitation_mm - ia) * (precipitation_mm - ia) /
                     (precipitation_mm - ia + s);
    return std::min(q, precipitation_mm);
}

struct ScsCnCheck {
    double precipitation_mm = 0.0;
    double curve_number = 0.0;
    double claimed_runoff_mm = 0.0;
    double computed_runoff_mm = 0.0;
    bool pass = false;
};

namespace detail {

inline std::optional<double> find_labeled_number(const std::string& folded_zone,
                                                 const std::regex& re) {
    std::smatch m;
    if (!std::regex_search(folded_zone, m, re)) return std::nullopt;
    std::string num = m[m.size() - 1];
    std::replace(num.begin(), num.end(), ',', '.');
    try {
        return std::stod(num);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace detail

// Returns nullopt when the personal_numeric zone is missing or the three
// labeled values cannot all be extracted; the report then records the
// exercise as not machine-checkable.
inline std::optional<ScsCnCheck> verify_numeric_exercise(const Document& doc,
                                                         double tolerance_rel) {
    static const std::regex p_re(R"(\bp\s*=\s*([0-9]+(?:[.,][0-9]+)?)\s*mm)");
    static const std::regex cn_re(R"(\bcn\s*=\s*([0-9]+(?:[.,][0-9]+)?))");
    static const std::regex q_re(R"(\b(q|pe)\s*=\s*([0-9]+(?:[.,][0-9]+)?)\s*mm)");

    const std::string zone = doc.zone_text(ZoneLabel::personal_numeric);
    if (zone.empty()) return std::nullopt;
    const std::string folded = fold_string(zone, true);

    const auto p = detail::find_labeled_number(folded, p_re);
    const auto cn = detail::find_labeled_number(folded, cn_re);
    const auto claimed = detail::find_labeled_number(folded, q_re);
    if (!p || !cn || !claimed) return std::nullopt;
    if (!(*cn > 0.0 && *cn <= 100.0) || !(*p >= 0.0)) return std::nullopt;

    ScsCnCheck check;
    check.precipitation_mm = *p;
    check.curve_number = *cn;
    check.claimed_runoff_mm = *claimed;
    check.computed_runoff_mm = scs_cn_runoff(*p, *cn);
    check.pass = std::abs(*claimed - check.computed_runoff_mm) <=
                 tolerance_rel * std::max(1.0, check.computed_runoff_mm);
    return check;
}

}  // namespace cohort_audit
