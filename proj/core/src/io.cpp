#include "elan/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "elan/dates.hpp"
#include "json.hpp"

namespace elan {

using nlohmann::json;

std::string format_sig9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void validate_config(const AnalysisConfig& c) {
    const auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
    if (!(c.beta > 0.0) || !std::isfinite(c.beta)) fail("beta must be > 0");
    if (!(c.gamma > 0.0) || !std::isfinite(c.gamma)) fail("gamma must be > 0");
    if (!(c.mu > 0.0) || !std::isfinite(c.mu)) fail("mu must be > 0");
    if (!(c.min_period >= 0.0)) fail("min_period must be >= 0");
    if (!(c.max_period >= 0.0)) fail("max_period must be >= 0");
    if (c.min_period > 0.0 && c.max_period > 0.0 && !(c.min_period < c.max_period))
        fail("min_period must be below max_period");
    if (c.voxels_per_octave < 1) fail("voxels_per_octave must be >= 1");
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) fail("alpha must be in (0, 1)");
    if (c.noise_method != "monte-carlo" && c.noise_method != "analytic-white")
        fail("noise_method must be monte-carlo or analytic-white");
    if (c.mc_trials < 20) fail("mc_trials must be >= 20");
    if (!(c.cutoff_period > 0.0)) fail("cutoff_period must be > 0");
    if (c.filter_order < 1) fail("filter_order must be >= 1");
    if (!(c.dt >= 0.0)) fail("dt must be >= 0");
    if (!(c.max_gap >= 1.0)) fail("max_gap must be >= 1");
    if (c.date_column.empty()) fail("date_column must be named");
    if (c.value_column.empty()) fail("value_column must be named");
}

AnalysisConfig config_from_json_text(const std::string& json_text, AnalysisConfig base) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: bad JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    for (const auto& [key, val] : j.items()) {
        try {
            if (key == "beta") base.beta = val.get<double>();
            else if (key == "gamma") base.gamma = val.get<double>();
            else if (key == "mu") base.mu = val.get<double>();
            else if (key == "min_period") base.min_period = val.get<double>();
            else if (key == "max_period") base.max_period = val.get<double>();
            else if (key == "voxels_per_octave") base.voxels_per_octave = val.get<int>();
            else if (key == "alpha") base.alpha = val.get<double>();
            else if (key == "noise_method") base.noise_method = val.get<std::string>();
            else if (key == "mc_trials") base.mc_trials = val.get<int>();
            else if (key == "filter_enabled") base.filter_enabled = val.get<bool>();
            else if (key == "cutoff_period") base.cutoff_period = val.get<double>();
            else if (key == "filter_order") base.filter_order = val.get<int>();
            else if (key == "seed") base.seed = val.get<std::uint64_t>();
            else if (key == "dt") base.dt = val.get<double>();
            else if (key == "max_gap") base.max_gap = val.get<double>();
            else if (key == "date_column") base.date_column = val.get<std::string>();
            else if (key == "value_column") base.value_column = val.get<std::string>();
            else throw std::invalid_argument("config: unknown key: " + key);
        } catch (const json::exception& e) {
            throw std::invalid_argument("config: bad value for " + key + ": " + e.what());
        }
    }
    validate_config(base);
    return base;
}

AnalysisConfig load_config_file(const std::string& path, AnalysisConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str(), base);
}

std::string config_json_text(const AnalysisConfig& c) {
    json j;
    j["beta"] = c.beta;
    j["gamma"] = c.gamma;
    j["mu"] = c.mu;
    j["min_period"] = c.min_period;
    j["max_period"] = c.max_period;
    j["voxels_per_octave"] = c.voxels_per_octave;
    j["alpha"] = c.alpha;
    j["noise_method"] = c.noise_method;
    j["mc_trials"] = c.mc_trials;
    j["filter_enabled"] = c.filter_enabled;
    j["cutoff_period"] = c.cutoff_period;
    j["filter_order"] = c.filter_order;
    j["seed"] = c.seed;
    j["dt"] = c.dt;
    j["max_gap"] = c.max_gap;
    j["date_column"] = c.date_column;
    j["value_column"] = c.value_column;
    return j.dump(2) + "\n";
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (const char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    cells.push_back(cur);
    return cells;
}

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size() && std::isfinite(out);
    } catch (...) {
        return false;
    }
}

}  // namespace

CsvReadResult read_csv(const std::string& path, const std::string& date_column,
                       const std::string& value_column,
                       const std::vector<std::string>& missing_markers) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);

    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("empty input: " + path);
    const auto header = split_csv_line(line);
    std::size_t date_idx = header.size(), value_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (trimmed(header[i]) == date_column) date_idx = i;
        if (trimmed(header[i]) == value_column) value_idx = i;
    }
    if (date_idx == header.size())
        throw std::invalid_argument(path + ": no column named '" + date_column + "'");
    if (value_idx == header.size())
        throw std::invalid_argument(path + ": no column named '" + value_column + "'");

    CsvReadResult out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() <= std::max(date_idx, value_idx))
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": too few columns");
        const std::string raw_value = trimmed(cells[value_idx]);
        if (std::find(missing_markers.begin(), missing_markers.end(), raw_value) !=
            missing_markers.end()) {
            ++out.dropped;
            continue;
        }
        double value = 0.0;
        if (!parse_double(raw_value, value))
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": bad value '" + raw_value + "'");
        const std::string raw_date = trimmed(cells[date_idx]);
        double t = 0.0;
        int y;
        unsigned mo, d;
        if (parse_iso_date(raw_date, y, mo, d)) {
            t = 1970.0 + static_cast<double>(days_from_civil(y, mo, d)) / kDaysPerYear;
            out.iso_dates.push_back(raw_date);
        } else if (parse_double(raw_date, t)) {
            // numeric fractional time, as written by the stage commands
        } else {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": bad date '" + raw_date + "'");
        }
        if (!out.series.times.empty() && !(t > out.series.times.back()))
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": timestamps not strictly increasing");
        out.series.times.push_back(t);
        out.series.values.push_back(value);
    }
    if (out.series.times.empty())
        throw std::invalid_argument(path + ": no data rows");
    return out;
}

std::vector<ElementEvent> read_events_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open events file: " + path);
    std::vector<ElementEvent> events;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": bad JSON: " + e.what());
        }
        try {
            ElementEvent ev;
            ev.t_sample = j.at("t_sample").get<double>();
            ev.c_abs = j.at("c_abs").get<double>();
            ev.c_phase = j.at("c_phase_rad").get<double>();
            ev.rho = j.at("rho_samples").get<double>();
            // omega_rho is derivable from rho, so hand-written specs may omit it
            ev.omega_rho = j.value("omega_rho", 0.0);
            ev.significance = j.value("significance", 1.0);
            ev.overlap_flag = j.value("overlap_flag", false);
            events.push_back(ev);
        } catch (const json::exception& e) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": missing event field: " + e.what());
        }
    }
    return events;
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot hash missing file: " + path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("sha256 init failed");
    }
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
        EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        char b[3];
        std::snprintf(b, sizeof b, "%02x", digest[i]);
        hex += b;
    }
    return hex;
}

}  // namespace elan
