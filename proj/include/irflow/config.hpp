#ifndef IRFLOW_CONFIG_HPP
#define IRFLOW_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "irflow/scenario.hpp"
#include "irflow/series.hpp"

namespace irflow {

inline constexpr const char* kToolVersion = "1.0.0";

/// Minimal INI-style config: [section] headers, key = value pairs, '#' or ';'
/// comments. Section and key order are preserved for digest stability.
struct IniFile {
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::string raw;  // original file content, digested verbatim

    bool has(const std::string& section, const std::string& key) const;
    const std::string& get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
};

IniFile parse_ini(const std::string& path);

/// Load a Scenario from a config file with sections [pathway], [omega],
/// [gamma], [fleet]. Unknown sections or keys are errors (typo protection).
/// Anchor CSV paths are resolved relative to the config file's directory.
/// If digest_hex_out is non-null it receives the hex digest of the config
/// file plus every referenced data file.
Scenario load_scenario(const std::string& path, std::string* digest_hex_out = nullptr);

/// Anchor CSV with header year,value_gw.
std::vector<std::pair<int, double>> load_anchors_csv(const std::string& path);

/// 64-bit FNV-1a over a byte string; used for input-content digests.
std::uint64_t fnv1a64(const std::string& bytes);
std::string digest_hex(std::uint64_t digest);

struct RunManifest {
    std::string scenario_id;
    std::string engine;
    std::uint64_t seed = 0;
    std::string config_digest;  // hex FNV-1a over every resolved input
    std::string tool_version = kToolVersion;
    std::string rng_algorithm;
    std::string timestamp_utc;
};

std::string current_utc_timestamp();
void write_manifest_json(const RunManifest& manifest, const std::string& path);

/// Shortest-round-trip decimal formatting (17 significant digits, C locale).
std::string format_double(double v);

/// Series serialization: CSV with header year,value,unit and a JSON array of
/// {year, value} objects. Both round-trip losslessly.
void series_to_csv(const AnnualSeries& series, const std::string& path);
AnnualSeries series_from_csv(const std::string& path);
std::string series_to_json(const AnnualSeries& series, Unit unit_hint);
AnnualSeries series_from_json(const std::string& json_text, Unit unit);

/// Generic CSV table writer: one header line, then rows formatted with
/// format_double; writes "\n" line endings regardless of platform.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace irflow

#endif
