#include "irflow/config.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace irflow {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open file: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double parse_double(const std::string& where, const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": malformed number '" + s + "'");
    }
}

int parse_int(const std::string& where, const std::string& s) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": malformed integer '" + s + "'");
    }
}

void reject_unknown_keys(const std::string& path, const IniFile& ini,
                         const std::map<std::string, std::set<std::string>>& schema) {
    for (const auto& [section, kv] : ini.sections) {
        const auto it = schema.find(section);
        if (it == schema.end()) {
            throw std::invalid_argument(path + ": unknown section [" + section + "]");
        }
        for (const auto& [key, value] : kv) {
            if (it->second.find(key) == it->second.end()) {
                throw std::invalid_argument(path + ": unknown key '" + key + "' in [" + section + "]");
            }
        }
    }
}

}  // namespace

bool IniFile::has(const std::string& section, const std::string& key) const {
    const auto s = sections.find(section);
    return s != sections.end() && s->second.find(key) != s->second.end();
}

const std::string& IniFile::get(const std::string& section, const std::string& key) const {
    const auto s = sections.find(section);
    if (s == sections.end()) {
        throw std::invalid_argument("missing config section [" + section + "]");
    }
    const auto k = s->second.find(key);
    if (k == s->second.end()) {
        throw std::invalid_argument("missing key '" + key + "' in section [" + section + "]");
    }
    return k->second;
}

std::string IniFile::get_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

IniFile parse_ini(const std::string& path) {
    IniFile ini;
    ini.raw = read_file(path);
    std::istringstream in(ini.raw);
    std::string line;
    std::string current;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                            ": malformed section header");
            }
            current = trim(t.substr(1, t.size() - 2));
            if (current.empty()) {
                throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty section name");
            }
            ini.sections[current];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos || current.empty()) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 'key = value' inside a section");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty key");
        }
        if (!ini.sections[current].emplace(key, value).second) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": duplicate key '" +
                                        key + "'");
        }
    }
    return ini;
}

std::vector<std::pair<int, double>> load_anchors_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || trim(line) != "year,value_gw") {
        throw std::invalid_argument(path + ":1: expected header year,value_gw");
    }
    std::vector<std::pair<int, double>> anchors;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto comma = t.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected 2 columns");
        }
        const std::string where = path + ":" + std::to_string(lineno);
        anchors.emplace_back(parse_int(where, t.substr(0, comma)),
                             parse_double(where, t.substr(comma + 1)));
    }
    if (anchors.size() < 2) {
        throw std::invalid_argument(path + ": need at least two anchors");
    }
    return anchors;
}

Scenario load_scenario(const std::string& path, std::string* digest_hex_out) {
    const IniFile ini = parse_ini(path);
    reject_unknown_keys(path, ini,
                        {{"pathway", {"type", "anchors_file", "end_value", "end_year", "tail", "share"}},
                         {"omega", {"start", "floor", "decay_rate", "start_year"}},
                         {"gamma", {"start", "end", "start_year", "ramp_end_year"}},
                         {"fleet",
                          {"scenario_id", "tau_mean", "unit_size_mw", "horizon_first", "horizon_last",
                           "seed", "mc_subsample", "recycling_lag_years"}}});

    const std::filesystem::path base_dir = std::filesystem::path(path).parent_path();
    const std::string anchors_rel = ini.get("pathway", "anchors_file");
    const std::string anchors_path = (base_dir / anchors_rel).string();
    const auto anchors = load_anchors_csv(anchors_path);

    const std::string type = ini.get("pathway", "type");
    CapacityPathway pathway = [&] {
        if (type == "bau") {
            const double end_value = parse_double(path, ini.get_or("pathway", "end_value", "489.0"));
            const int end_year = parse_int(path, ini.get_or("pathway", "end_year", "2050"));
            const std::string tail = ini.get_or("pathway", "tail", "linear");
            if (tail != "linear" && tail != "accelerating") {
                throw std::invalid_argument(path + ": pathway tail must be linear or accelerating");
            }
            return build_bau(anchors, end_value, end_year,
                             tail == "linear" ? TailMode::Linear : TailMode::Accelerating);
        }
        if (type == "nze") {
            const double share = parse_double(path, ini.get_or("pathway", "share", "0.40"));
            return build_nze(anchors, share);
        }
        throw std::invalid_argument(path + ": pathway type must be bau or nze");
    }();
    Scenario s{std::move(pathway)};

    s.omega.omega_start = parse_double(path, ini.get("omega", "start"));
    s.omega.omega_floor = parse_double(path, ini.get("omega", "floor"));
    s.omega.decay_rate = parse_double(path, ini.get("omega", "decay_rate"));
    s.omega.start_year = parse_int(path, ini.get_or("omega", "start_year", "2024"));

    s.gamma.gamma_start = parse_double(path, ini.get("gamma", "start"));
    s.gamma.gamma_end = parse_double(path, ini.get("gamma", "end"));
    s.gamma.start_year = parse_int(path, ini.get_or("gamma", "start_year", "2024"));
    s.gamma.ramp_end_year = parse_int(path, ini.get("gamma", "ramp_end_year"));

    s.lifetime = LifetimeDistribution::from_mean(parse_double(path, ini.get("fleet", "tau_mean")));
    s.unit_size_mw = parse_double(path, ini.get_or("fleet", "unit_size_mw", "1.0"));
    s.horizon_first = parse_int(path, ini.get_or("fleet", "horizon_first", "2024"));
    s.horizon_last = parse_int(path, ini.get_or("fleet", "horizon_last", "2050"));
    s.seed = static_cast<std::uint64_t>(
        std::stoull(ini.get_or("fleet", "seed", "0")));
    s.mc_subsample = parse_int(path, ini.get_or("fleet", "mc_subsample", "1"));
    s.recycling_lag_years = parse_int(path, ini.get_or("fleet", "recycling_lag_years", "0"));
    s.id = ini.get_or("fleet", "scenario_id", "custom");
    s.validate();

    if (digest_hex_out != nullptr) {
        *digest_hex_out = digest_hex(fnv1a64(ini.raw + read_file(anchors_path)));
    }
    return s;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string digest_hex(std::uint64_t digest) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

std::string current_utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest_json(const RunManifest& manifest, const std::string& path) {
    nlohmann::json j;
    j["scenario_id"] = manifest.scenario_id;
    j["engine"] = manifest.engine;
    j["seed"] = manifest.seed;
    j["config_digest"] = manifest.config_digest;
    j["tool_version"] = manifest.tool_version;
    j["rng_algorithm"] = manifest.rng_algorithm;
    j["timestamp_utc"] = manifest.timestamp_utc;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write manifest: " + path);
    }
    out << j.dump(2) << "\n";
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void series_to_csv(const AnnualSeries& series, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write series CSV: " + path);
    }
    out << "year,value,unit\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << series.start_year() + static_cast<int>(i) << "," << format_double(series[i]) << ","
            << unit_name(series.unit()) << "\n";
    }
}

AnnualSeries series_from_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || trim(line) != "year,value,unit") {
        throw std::invalid_argument(path + ":1: expected header year,value,unit");
    }
    std::vector<double> values;
    int first = 0;
    int expected = 0;
    Unit unit = Unit::Fraction;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        std::istringstream ss(t);
        std::string year_s, value_s, unit_s;
        if (!std::getline(ss, year_s, ',') || !std::getline(ss, value_s, ',') ||
            !std::getline(ss, unit_s)) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected 3 columns");
        }
        const std::string where = path + ":" + std::to_string(lineno);
        const int year = parse_int(where, year_s);
        if (values.empty()) {
            first = year;
            unit = unit_from_name(trim(unit_s));
        } else if (year != expected) {
            throw std::invalid_argument(where + ": years must be contiguous");
        } else if (unit_from_name(trim(unit_s)) != unit) {
            throw std::invalid_argument(where + ": mixed units in one series");
        }
        expected = year + 1;
        values.push_back(parse_double(where, value_s));
    }
    return AnnualSeries(first, std::move(values), unit);
}

std::string series_to_json(const AnnualSeries& series, Unit /*unit_hint*/) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < series.size(); ++i) {
        arr.push_back({{"year", series.start_year() + static_cast<int>(i)},
                       {"value", series[i]}});
    }
    return arr.dump();
}

AnnualSeries series_from_json(const std::string& json_text, Unit unit) {
    const nlohmann::json arr = nlohmann::json::parse(json_text);
    if (!arr.is_array() || arr.empty()) {
        throw std::invalid_argument("series JSON must be a non-empty array");
    }
    int first = 0;
    std::vector<double> values;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const int year = arr[i].at("year").get<int>();
        if (i == 0) {
            first = year;
        } else if (year != first + static_cast<int>(i)) {
            throw std::invalid_argument("series JSON years must be contiguous");
        }
        values.push_back(arr[i].at("value").get<double>());
    }
    return AnnualSeries(first, std::move(values), unit);
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write CSV: " + path);
    }
    out << header << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ",";
            // Year columns are integral; print them without exponent noise.
            if (row[i] == static_cast<double>(static_cast<long long>(row[i])) &&
                std::abs(row[i]) < 1e15) {
                out << static_cast<long long>(row[i]);
            } else {
                out << format_double(row[i]);
            }
        }
        out << "\n";
    }
}

}  // namespace irflow
