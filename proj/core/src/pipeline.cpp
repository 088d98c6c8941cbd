#include "elan/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "elan/dates.hpp"
#include "json.hpp"

namespace elan {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double median_spacing(const RawSeries& raw) {
    if (raw.times.size() < 2)
        throw std::invalid_argument("run_analysis: need at least 2 observations");
    std::vector<double> diffs(raw.times.size() - 1);
    for (std::size_t i = 1; i < raw.times.size(); ++i)
        diffs[i - 1] = raw.times[i] - raw.times[i - 1];
    std::nth_element(diffs.begin(), diffs.begin() + static_cast<std::ptrdiff_t>(diffs.size() / 2),
                     diffs.end());
    return diffs[diffs.size() / 2];
}

NoiseMethod method_from_string(const std::string& s) {
    if (s == "monte-carlo") return NoiseMethod::monte_carlo;
    if (s == "analytic-white") return NoiseMethod::analytic_white;
    throw std::invalid_argument("unknown noise method: " + s);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path);
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

TimeSeries preprocess_series(const RawSeries& raw, AnalysisConfig& config) {
    validate_config(config);
    if (!(config.dt > 0.0)) config.dt = median_spacing(raw);
    const TimeSeries resampled = resample_uniform(raw, config.dt, config.max_gap);
    if (!config.filter_enabled) return resampled;
    FilterSpec spec;
    spec.order = config.filter_order;
    spec.cutoff_freq = 1.0 / config.cutoff_period;
    return butterworth_highpass(resampled, spec);
}

ScaleGrid resolve_grid(AnalysisConfig& config, std::size_t n, double dt) {
    validate_config(config);
    double min_period_samples = config.min_period > 0.0 ? config.min_period / dt : 8.0;
    double max_period_samples =
        config.max_period > 0.0 ? config.max_period / dt : static_cast<double>(n) / 8.0;
    min_period_samples = std::max(min_period_samples, 2.0);
    if (!(max_period_samples > min_period_samples))
        throw std::invalid_argument(
            "transform: scale range is empty; series too short or periods inverted");
    config.min_period = min_period_samples * dt;
    config.max_period = max_period_samples * dt;
    config.dt = dt;
    return make_scale_grid(MorseParams(config.beta, config.gamma), min_period_samples,
                           max_period_samples, config.voxels_per_octave);
}

Scalogram transform_series(const TimeSeries& x, AnalysisConfig& config) {
    if (config.gamma > 3.0 || config.beta < 1.0)
        std::cerr << "warning: gamma > 3 or beta < 1 produces wavelet sidelobes that "
                     "degrade isolated-event estimates\n";
    const ScaleGrid grid = resolve_grid(config, x.values.size(), x.dt);
    return cwt_fft(x, MorseParams(config.beta, config.gamma), grid);
}

AnalysisResult run_analysis(const RawSeries& raw, const AnalysisConfig& config_in) {
    AnalysisConfig config = config_in;

    AnalysisResult r;
    r.filtered = preprocess_series(raw, config);
    r.resampled = config.filter_enabled ? resample_uniform(raw, config.dt, config.max_gap)
                                        : r.filtered;
    r.scalogram = transform_series(r.filtered, config);
    r.config = config;

    const ElementParams ep(config.beta, config.mu, config.gamma);
    r.noise = estimate_noise(r.scalogram, ep, config.alpha,
                             method_from_string(config.noise_method), config.mc_trials);
    const auto maxima = find_maxima(r.scalogram, 1e-12 * r.scalogram.max_modulus());
    r.events = estimate_elements(r.scalogram, maxima, r.noise, ep);
    r.element_scalogram =
        reconstruct_scalogram(r.events, ep, r.scalogram.grid, r.filtered.values.size(),
                              config.dt, r.filtered.t0);
    return r;
}

AnalysisResult analyze_file(const std::string& csv_path, const AnalysisConfig& config) {
    const CsvReadResult read = read_csv(csv_path, config.date_column, config.value_column);
    if (read.dropped > 0)
        std::cerr << csv_path << ": dropped " << read.dropped << " rows with missing values\n";
    AnalysisResult r = run_analysis(read.series, config);
    r.dropped_rows = read.dropped;
    return r;
}

void write_series_csv(const TimeSeries& x, const std::string& path) {
    auto out = open_out(path);
    out << "date,value,date_iso\n";
    char date_buf[40];
    for (std::size_t i = 0; i < x.values.size(); ++i) {
        const double t = x.time_of(static_cast<double>(i));
        std::snprintf(date_buf, sizeof date_buf, "%.17g", t);
        out << date_buf << ',' << format_sig9(x.values[i]) << ','
            << iso_from_year_fraction(t) << '\n';
    }
    finish(out, path);
}

void write_scalogram_csv(const Scalogram& sg, const std::string& path) {
    auto out = open_out(path);
    out << "period";
    for (std::size_t i = 0; i < sg.n_times; ++i)
        out << ',' << format_sig9(sg.t0 + static_cast<double>(i) * sg.dt);
    out << '\n';
    for (std::size_t k = 0; k < sg.n_scales(); ++k) {
        out << format_sig9(sg.grid.period(k) * sg.dt);
        for (std::size_t i = 0; i < sg.n_times; ++i)
            out << ',' << format_sig9(sg.modulus(k, i));
        out << '\n';
    }
    finish(out, path);
}

void write_scalogram_pgm(const Scalogram& sg, const std::string& path) {
    auto out = open_out(path);
    const double vmax = sg.max_modulus();
    // 120 dB display floor; row 0 is the finest scale.
    const double vmin = vmax > 0.0 ? vmax * 1e-6 : 1.0;
    const double span = vmax > 0.0 ? std::log(vmax) - std::log(vmin) : 1.0;
    out << "P5\n# log-magnitude wavelet scalogram, row 0 = finest scale\n"
        << sg.n_times << ' ' << sg.n_scales() << "\n255\n";
    std::vector<unsigned char> row(sg.n_times);
    for (std::size_t k = 0; k < sg.n_scales(); ++k) {
        for (std::size_t i = 0; i < sg.n_times; ++i) {
            const double v = std::max(sg.modulus(k, i), vmin);
            const double g =
                vmax > 0.0 ? 255.0 * (std::log(v) - std::log(vmin)) / span : 0.0;
            row[i] = static_cast<unsigned char>(std::clamp(g, 0.0, 255.0));
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size()));
    }
    finish(out, path);
}

namespace {

void write_events(const std::vector<ElementEvent>& events, double dt, double t0,
                  const std::string& path, bool jsonl) {
    auto out = open_out(path);
    if (!jsonl)
        out << "t_iso,t_sample,c_abs,c_phase_rad,rho_samples,period,omega_rho,"
               "significance,overlap_flag\n";
    for (const ElementEvent& ev : events) {
        const std::string t_iso = iso_from_year_fraction(t0 + ev.t_sample * dt);
        const std::string period = format_sig9(2.0 * M_PI * dt / ev.omega_rho);
        if (jsonl) {
            out << "{\"t_iso\":\"" << t_iso << "\",\"t_sample\":" << format_sig9(ev.t_sample)
                << ",\"c_abs\":" << format_sig9(ev.c_abs)
                << ",\"c_phase_rad\":" << format_sig9(ev.c_phase)
                << ",\"rho_samples\":" << format_sig9(ev.rho) << ",\"period\":" << period
                << ",\"omega_rho\":" << format_sig9(ev.omega_rho)
                << ",\"significance\":" << format_sig9(ev.significance)
                << ",\"overlap_flag\":" << (ev.overlap_flag ? "true" : "false") << "}\n";
        } else {
            out << t_iso << ',' << format_sig9(ev.t_sample) << ',' << format_sig9(ev.c_abs)
                << ',' << format_sig9(ev.c_phase) << ',' << format_sig9(ev.rho) << ','
                << period << ',' << format_sig9(ev.omega_rho) << ','
                << format_sig9(ev.significance) << ',' << (ev.overlap_flag ? 1 : 0)
                << '\n';
        }
    }
    finish(out, path);
}

}  // namespace

void write_events_jsonl(const std::vector<ElementEvent>& events, double dt, double t0,
                        const std::string& path) {
    write_events(events, dt, t0, path, true);
}

void write_events_csv(const std::vector<ElementEvent>& events, double dt, double t0,
                      const std::string& path) {
    write_events(events, dt, t0, path, false);
}

std::string write_outputs(const AnalysisResult& r, const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + out_dir);
    const auto at = [&](const char* name) { return (fs::path(out_dir) / name).string(); };

    write_series_csv(r.filtered, at("filtered.csv"));
    write_scalogram_csv(r.scalogram, at("scalogram.csv"));
    write_scalogram_pgm(r.scalogram, at("scalogram.pgm"));
    write_scalogram_csv(r.element_scalogram, at("element_scalogram.csv"));
    write_scalogram_pgm(r.element_scalogram, at("element_scalogram.pgm"));
    write_events_jsonl(r.events, r.filtered.dt, r.filtered.t0, at("events.jsonl"));
    write_events_csv(r.events, r.filtered.dt, r.filtered.t0, at("events.csv"));
    {
        auto out = open_out(at("config.json"));
        out << config_json_text(r.config);
        finish(out, at("config.json"));
    }

    json manifest;
    manifest["artifacts"] = json::array();
    for (const char* name : {"filtered.csv", "scalogram.csv", "scalogram.pgm",
                             "element_scalogram.csv", "element_scalogram.pgm",
                             "events.jsonl", "events.csv", "config.json"}) {
        const std::string p = at(name);
        json entry;
        entry["file"] = name;
        entry["sha256"] = sha256_file(p);
        entry["bytes"] = static_cast<std::uint64_t>(fs::file_size(p));
        manifest["artifacts"].push_back(entry);
    }
    manifest["events"] = r.events.size();
    manifest["dropped_rows"] = r.dropped_rows;
    manifest["sigma_hat"] = r.noise.sigma_hat;
    const std::string mpath = at("manifest.json");
    auto out = open_out(mpath);
    out << manifest.dump(2) << '\n';
    finish(out, mpath);
    return mpath;
}

}  // namespace elan
