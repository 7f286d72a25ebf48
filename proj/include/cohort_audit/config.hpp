#pragma once

// Flat key=value configuration ('#' comments, UTF-8). Every key has a
// default; unknown keys are a hard error so typos never silently fall
// back to defaults. COHORT_AUDIT_SEED in the environment overrides the
// seed from any source.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohort_audit/evidence.hpp"
#include "cohort_audit/ingest.hpp"
#include "cohort_audit/report.hpp"
#include "cohort_audit/similarity.hpp"

namespace cohort_audit {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::uint64_t seed = 42;
    SimilarityConfig similarity;
    EvidenceConfig evidence;
    ZoneMarkerConfig zones = ZoneMarkerConfig::defaults();
    StatsConvention stats;
    std::string roster_path;     // resolved; used for loading
    std::string stopwords_path;  // resolved; used for loading
    std::string out_dir = "out";
    bool scale10 = false;
    // path values as written in the config file; echoed into reports so
    // report.json stays byte-stable across checkouts and output dirs
    std::string roster_path_given;
    std::string stopwords_path_given;
    std::string out_dir_given = "out";

    static Config load(const std::string& config_path = "");
    std::vector<std::pair<std::string, std::string>> echo() const;
    void finalize();
};

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

struct ConfigParser {
    Config& config;

    void apply(const std::string& key, const std::string& value, const std::string& where) {
        const auto as_double = [&] {
            try {
                return std::stod(value);
            } catch (const std::exception&) {
                throw ConfigError(where + ": value for " + key + " is not a number: '" + value +
                                  "'");
            }
        };
        const auto as_int = [&]() -> std::int64_t {
            try {
                return std::stoll(value);
            } catch (const std::exception&) {
                throw ConfigError(where + ": value for " + key + " is not an integer: '" + value +
                                  "'");
            }
        };
        const auto as_u64 = [&]() -> std::uint64_t {
            try {
                return std::stoull(value);
            } catch (const std::exception&) {
                throw ConfigError(where + ": value for " + key +
                                  " is not an unsigned integer: '" + value + "'");
            }
        };
        const auto as_bool = [&]() -> bool {
            if (value == "1" || value == "true" || value == "on") return true;
            if (value == "0" || value == "false" || value == "off") return false;
            throw ConfigError(where + ": value for " + key + " must be 0/1: '" + value + "'");
        };
        const auto zone_marker = [&](ZoneLabel label) {
            for (auto& [l, pattern] : config.zones.markers)
                if (l == label) {
                    pattern = value;
                    return;
                }
            config.zones.markers.emplace_back(label, value);
        };
        const auto module_marker = [&](std::size_t k) {
            if (config.evidence.modules.patterns.size() < 5)
                config.evidence.modules.patterns.resize(5);
            config.evidence.modules.patterns[k] = value;
        };

        if (key == "seed") config.seed = as_u64();
        else if (key == "sim.noise") config.similarity.thresholds.noise = as_double();
        else if (key == "sim.medium") config.similarity.thresholds.medium = as_double();
        else if (key == "sim.high") config.similarity.thresholds.high = as_double();
        else if (key == "sim.copy") config.similarity.thresholds.copy = as_double();
        else if (key == "sim.bruteforce_cap") config.similarity.bruteforce_cap = static_cast<int>(as_int());
        else if (key == "minhash.H") config.similarity.hash_count = static_cast<int>(as_int());
        else if (key == "lsh.bands") config.similarity.lsh_bands = static_cast<int>(as_int());
        else if (key == "lsh.rows") config.similarity.lsh_rows = static_cast<int>(as_int());
        else if (key == "text.fold_diacritics") config.similarity.textprep.fold_diacritics = as_bool();
        else if (key == "text.stemming") config.similarity.textprep.stemming = as_bool();
        else if (key == "text.shingle_k") config.similarity.shingle_k = static_cast<int>(as_int());
        else if (key == "text.stopwords") {
            config.stopwords_path = value;
            config.stopwords_path_given = value;
        }
        else if (key == "evidence.min_minutes") config.evidence.min_minutes = as_int();
        else if (key == "evidence.gap_cap") config.evidence.gap_cap = as_int();
        else if (key == "evidence.numeric_tol") config.evidence.numeric_tol = as_double();
        else if (key == "modules.m1") module_marker(0);
        else if (key == "modules.m2") module_marker(1);
        else if (key == "modules.m3") module_marker(2);
        else if (key == "modules.m4") module_marker(3);
        else if (key == "modules.m5") module_marker(4);
        else if (key == "zones.personal_numeric") zone_marker(ZoneLabel::personal_numeric);
        else if (key == "zones.personal_review_answers") zone_marker(ZoneLabel::personal_review_answers);
        else if (key == "zones.tutor_text") zone_marker(ZoneLabel::tutor_text);
        else if (key == "stats.std") {
            if (value == "population") config.stats.sample_std = false;
            else if (value == "sample") config.stats.sample_std = true;
            else throw ConfigError(where + ": stats.std must be population|sample, got '" + value + "'");
        } else if (key == "stats.invalid_totals") {
            if (value == "nominal") config.stats.invalid_totals_nominal = true;
            else if (value == "zero") config.stats.invalid_totals_nominal = false;
            else throw ConfigError(where + ": stats.invalid_totals must be nominal|zero, got '" + value + "'");
        } else if (key == "paths.roster") {
            config.roster_path = value;
            config.roster_path_given = value;
        } else if (key == "paths.out") {
            config.out_dir = value;
            config.out_dir_given = value;
        } else if (key == "report.scale10") config.scale10 = as_bool();
        else throw ConfigError(where + ": unknown config key '" + key + "'");
    }
};

}  // namespace detail

inline void Config::finalize() {
    if (const char* env_seed = std::getenv("COHORT_AUDIT_SEED")) {
        try {
            seed = std::stoull(env_seed);
        } catch (const std::exception&) {
            throw ConfigError("COHORT_AUDIT_SEED is not an unsigned integer: '" +
                              std::string(env_seed) + "'");
        }
    }
    similarity.seed = seed;

    const auto& t = similarity.thresholds;
    if (!(0.0 <= t.noise && t.noise <= t.medium && t.medium <= t.high && t.high <= t.copy &&
          t.copy <= 1.0))
        throw ConfigError("similarity thresholds must satisfy 0 <= noise <= medium <= high <= "
                          "copy <= 1");
    if (similarity.hash_count < 1) throw ConfigError("minhash.H must be >= 1");
    if (similarity.lsh_bands < 1 || similarity.lsh_rows < 1)
        throw ConfigError("lsh.bands and lsh.rows must be >= 1");
    if (similarity.lsh_bands * similarity.lsh_rows != similarity.hash_count)
        throw ConfigError("lsh.bands * lsh.rows must equal minhash.H");
    if (similarity.shingle_k < 1) throw ConfigError("text.shingle_k must be >= 1");
    if (similarity.bruteforce_cap < 0) throw ConfigError("sim.bruteforce_cap must be >= 0");
    if (evidence.numeric_tol < 0.0) throw ConfigError("evidence.numeric_tol must be >= 0");
    if (evidence.min_minutes < 0) throw ConfigError("evidence.min_minutes must be >= 0");

    if (!stopwords_path.empty()) {
        similarity.textprep.extra_stopwords = load_stopword_file(stopwords_path);
        similarity.textprep.use_bundled_stopwords = false;
    }
}

inline Config Config::load(const std::string& config_path) {
    Config config;
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) throw ConfigError("cannot open config file: " + config_path);
        const auto config_dir = std::filesystem::path(config_path).parent_path();
        const auto resolve = [&](std::string& p) {
            if (!p.empty() && std::filesystem::path(p).is_relative())
                p = (config_dir / p).string();
        };
        detail::ConfigParser parser{config};
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::size_t first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#') continue;
            const std::string where = config_path + ":" + std::to_string(line_no);
            const std::size_t eq = line.find('=', first);
            if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
            std::size_t key_end = line.find_last_not_of(" \t", eq - 1);
            std::string key = line.substr(first, key_end - first + 1);
            std::string value = line.substr(eq + 1);
            while (!value.empty() && (value.front() == ' ' || value.front() == '\t'))
                value.erase(value.begin());
            while (!value.empty() && (value.back() == ' ' || value.back() == '\t'))
                value.pop_back();
            parser.apply(key, value, where);
        }
        // roster / stop-word paths resolve relative to the config file
        resolve(config.roster_path);
        resolve(config.stopwords_path);
    }
    config.finalize();
    return config;
}

inline std::vector<std::pair<std::string, std::string>> Config::echo() const {
    using detail::format_double;
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("seed", std::to_string(seed));
    kv.emplace_back("sim.noise", format_double(similarity.thresholds.noise));
    kv.emplace_back("sim.medium", format_double(similarity.thresholds.medium));
    kv.emplace_back("sim.high", format_double(similarity.thresholds.high));
    kv.emplace_back("sim.copy", format_double(similarity.thresholds.copy));
    kv.emplace_back("sim.bruteforce_cap", std::to_string(similarity.bruteforce_cap));
    kv.emplace_back("minhash.H", std::to_string(similarity.hash_count));
    kv.emplace_back("lsh.bands", std::to_string(similarity.lsh_bands));
    kv.emplace_back("lsh.rows", std::to_string(similarity.lsh_rows));
    kv.emplace_back("text.fold_diacritics", similarity.textprep.fold_diacritics ? "1" : "0");
    kv.emplace_back("text.stemming", similarity.textprep.stemming ? "1" : "0");
    kv.emplace_back("text.shingle_k", std::to_string(similarity.shingle_k));
    kv.emplace_back("text.stopwords", stopwords_path_given);
    kv.emplace_back("evidence.min_minutes", std::to_string(evidence.min_minutes));
    kv.emplace_back("evidence.gap_cap", std::to_string(evidence.gap_cap));
    kv.emplace_back("evidence.numeric_tol", format_double(evidence.numeric_tol));
    for (std::size_t k = 0; k < evidence.modules.patterns.size(); ++k)
        kv.emplace_back("modules.m" + std::to_string(k + 1), evidence.modules.patterns[k]);
    for (const auto& [label, pattern] : zones.markers)
        kv.emplace_back("zones." + std::string(to_string(label)), pattern);
    kv.emplace_back("stats.std", stats.sample_std ? "sample" : "population");
    kv.emplace_back("stats.invalid_totals", stats.invalid_totals_nominal ? "nominal" : "zero");
    kv.emplace_back("paths.roster", roster_path_given);
    kv.emplace_back("paths.out", out_dir_given);
    kv.emplace_back("report.scale10", scale10 ? "1" : "0");
    return kv;
}

}  // namespace cohort_audit
