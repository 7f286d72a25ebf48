#pragma once

// Operational similarity thresholds and the advisory traffic-light level.
// Band edges (lower edge inclusive):
//   [0, noise)         -> noise
//   [noise, medium)    -> low
//   [medium, high)     -> medium
//   [high, copy)       -> high
//   [copy, 1]          -> copy
// Levels prioritize human review; they never sanction by themselves.

#include <stdexcept>
#include <string_view>

namespace cohort_audit {

struct ThresholdConfig {
    double noise = 0.30;
    double medium = 0.45;
    double high = 0.75;
    double copy = 0.80;
};

enum class SimLevel { noise, low, medium, high, copy };

inline std::string_view to_string(SimLevel level) {
    switch (level) {
        case SimLevel::noise: return "noise";
        case SimLevel::low: return "low";
        case SimLevel::medium: return "medium";
        case SimLevel::high: return "high";
        case SimLevel::copy: return "copy";
    }
    return "noise";
}

inline SimLevel classify_level(double score, const ThresholdConfig& thresholds = {}) {
    if (!(score >= 0.0 && score <= 1.0))
        throw std::invalid_argument("classify_level: score must be in [0, 1]");
    if (score >= thresholds.copy) return SimLevel::copy;
    if (score >= thresholds.high) return SimLevel::high;
    if (score >= thresholds.medium) return SimLevel::medium;
    if (score >= thresholds.noise) return SimLevel::low;
    return SimLevel::noise;
}

}  // namespace cohort_audit
