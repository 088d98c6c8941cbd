// elan: wavelet element analysis of sampled time series.
//
// Subcommands run the full pipeline (analyze) or its individual stages
// (filter, transform, detect, reconstruct), plus synthesis and a numeric
// reference table (synth, theory). Every command is a thin composition of
// library calls; parameter resolution is defaults -> config file -> flags.
//
// Exit codes: 0 success, 1 runtime failure, 2 input or validation error.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "elan/cwt.hpp"
#include "elan/dates.hpp"
#include "elan/detect.hpp"
#include "elan/element_theory.hpp"
#include "elan/io.hpp"
#include "elan/morse.hpp"
#include "elan/pipeline.hpp"
#include "elan/preprocess.hpp"

namespace {

// Period arguments carry an optional unit suffix: d (days), m (months),
// y (years). A bare number is taken in the series' native time units, which
// is fractional years for dated CSV input and samples-as-written otherwise.
double parse_period(const std::string& text) {
    std::string s = text;
    double factor = 1.0;
    if (!s.empty()) {
        const char u = static_cast<char>(std::tolower(static_cast<unsigned char>(s.back())));
        if (u == 'd') factor = 1.0 / elan::kDaysPerYear;
        else if (u == 'm') factor = 1.0 / 12.0;
        if (u == 'd' || u == 'm' || u == 'y') s.pop_back();
    }
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || s.empty() || !(v > 0.0))
        throw std::invalid_argument("period '" + text + "': expected a positive NUMBER[d|m|y]");
    return v * factor;
}

// Shared flag set. Each subcommand attaches the groups it needs; resolve()
// layers any config file under the flags the user actually passed.
class ConfigFlags {
  public:
    enum Group : unsigned {
        kWavelet = 1u << 0,  // --beta --gamma
        kElement = 1u << 1,  // --mu
        kGrid = 1u << 2,     // --min-period --max-period --voxels-per-octave
        kDetect = 1u << 3,   // --alpha --noise-method --mc-trials
        kFilter = 1u << 4,   // --cutoff-period --filter-order --no-filter
        kCsv = 1u << 5,      // --date-column --value-column --dt --max-gap
        kSeed = 1u << 6,     // --seed
    };

    void attach(CLI::App& cmd, unsigned groups) {
        cmd.add_option("--config", config_path_, "JSON config file (flags override it)")
            ->check(CLI::ExistingFile);
        if (groups & kWavelet) {
            add(cmd, "--beta", beta_, "analysis wavelet order beta",
                [this](elan::AnalysisConfig& c) { c.beta = beta_; });
            add(cmd, "--gamma", gamma_, "wavelet family gamma",
                [this](elan::AnalysisConfig& c) { c.gamma = gamma_; });
        }
        if (groups & kElement)
            add(cmd, "--mu", mu_, "element wavelet order mu",
                [this](elan::AnalysisConfig& c) { c.mu = mu_; });
        if (groups & kGrid) {
            add(cmd, "--min-period", min_period_, "shortest analysis period, NUMBER[d|m|y] (default: 8 samples)",
                [this](elan::AnalysisConfig& c) { c.min_period = parse_period(min_period_); });
            add(cmd, "--max-period", max_period_, "longest analysis period, NUMBER[d|m|y] (default: an eighth of the series)",
                [this](elan::AnalysisConfig& c) { c.max_period = parse_period(max_period_); });
            add(cmd, "--voxels-per-octave", vpo_, "scale grid density",
                [this](elan::AnalysisConfig& c) { c.voxels_per_octave = vpo_; });
        }
        if (groups & kDetect) {
            add(cmd, "--alpha", alpha_, "family-wise false-detection rate",
                [this](elan::AnalysisConfig& c) { c.alpha = alpha_; });
            add(cmd, "--noise-method", noise_method_, "monte-carlo or analytic-white",
                [this](elan::AnalysisConfig& c) { c.noise_method = noise_method_; });
            add(cmd, "--mc-trials", mc_trials_, "monte-carlo trial count",
                [this](elan::AnalysisConfig& c) { c.mc_trials = mc_trials_; });
        }
        if (groups & kFilter) {
            add(cmd, "--cutoff-period", cutoff_period_, "high-pass cutoff period, NUMBER[d|m|y]",
                [this](elan::AnalysisConfig& c) { c.cutoff_period = parse_period(cutoff_period_); });
            add(cmd, "--filter-order", filter_order_, "Butterworth order",
                [this](elan::AnalysisConfig& c) { c.filter_order = filter_order_; });
            appliers_.emplace_back(
                cmd.add_flag("--no-filter", no_filter_, "skip the high-pass stage"),
                [this](elan::AnalysisConfig& c) { c.filter_enabled = !no_filter_; });
        }
        if (groups & kCsv) {
            add(cmd, "--date-column", date_column_, "input date/time column name",
                [this](elan::AnalysisConfig& c) { c.date_column = date_column_; });
            add(cmd, "--value-column", value_column_, "input value column name",
                [this](elan::AnalysisConfig& c) { c.value_column = value_column_; });
            add(cmd, "--dt", dt_, "resampling interval, time units (default: median spacing)",
                [this](elan::AnalysisConfig& c) { c.dt = dt_; });
            add(cmd, "--max-gap", max_gap_, "largest interpolatable gap, in dt units",
                [this](elan::AnalysisConfig& c) { c.max_gap = max_gap_; });
        }
        if (groups & kSeed)
            add(cmd, "--seed", seed_, "RNG seed (noise thresholds, synthesis)",
                [this](elan::AnalysisConfig& c) { c.seed = seed_; });
    }

    elan::AnalysisConfig resolve() const {
        elan::AnalysisConfig c;
        if (!config_path_.empty()) c = elan::load_config_file(config_path_, c);
        for (const auto& [opt, apply] : appliers_)
            if (opt->count() > 0) apply(c);
        elan::validate_config(c);
        return c;
    }

  private:
    template <typename T, typename F>
    void add(CLI::App& cmd, const std::string& name, T& slot, const std::string& help, F apply) {
        auto* opt = cmd.add_option(name, slot, help)->capture_default_str();
        appliers_.emplace_back(opt, std::move(apply));
    }

    std::string config_path_;
    // Slots start at the library defaults so --help reports the real values.
    double beta_ = 3.0, gamma_ = 1.0, mu_ = 3.0;
    std::string min_period_, max_period_;
    int vpo_ = 16;
    double alpha_ = 0.05;
    std::string noise_method_ = "monte-carlo";
    int mc_trials_ = 200;
    std::string cutoff_period_ = "4m";
    int filter_order_ = 3;
    bool no_filter_ = false;
    std::string date_column_ = "date", value_column_ = "value";
    double dt_ = 0.0, max_gap_ = 10.0;
    std::uint64_t seed_ = 42;

    std::vector<std::pair<CLI::Option*, std::function<void(elan::AnalysisConfig&)>>> appliers_;
};

void write_resolved_config(const elan::AnalysisConfig& c, const std::string& out_dir) {
    std::ofstream out(out_dir + "/config.json");
    if (!out) throw std::runtime_error("cannot write: " + out_dir + "/config.json");
    out << elan::config_json_text(c);
}

std::string ensure_dir(const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    return out_dir;
}

void cmd_analyze(const std::string& input, const ConfigFlags& flags, const std::string& out_dir) {
    const elan::AnalysisConfig config = flags.resolve();
    const elan::AnalysisResult r = elan::analyze_file(input, config);
    const std::string manifest = elan::write_outputs(r, out_dir);
    std::printf("%zu events, sigma_hat=%s\n", r.events.size(),
                elan::format_sig9(r.noise.sigma_hat).c_str());
    std::printf("wrote %s\n", manifest.c_str());
}

void cmd_filter(const std::string& input, const ConfigFlags& flags, const std::string& out) {
    elan::AnalysisConfig config = flags.resolve();
    const elan::CsvReadResult csv = elan::read_csv(input, config.date_column, config.value_column);
    if (csv.dropped > 0)
        std::fprintf(stderr, "note: dropped %zu rows with missing values\n", csv.dropped);
    const elan::TimeSeries filtered = elan::preprocess_series(csv.series, config);
    elan::write_series_csv(filtered, out);
    std::printf("wrote %s (%zu samples, dt=%s)\n", out.c_str(), filtered.values.size(),
                elan::format_sig9(filtered.dt).c_str());
}

void cmd_transform(const std::string& input, const ConfigFlags& flags, const std::string& out_dir) {
    elan::AnalysisConfig config = flags.resolve();
    const elan::CsvReadResult csv = elan::read_csv(input, config.date_column, config.value_column);
    if (csv.dropped > 0)
        std::fprintf(stderr, "note: dropped %zu rows with missing values\n", csv.dropped);
    const elan::TimeSeries filtered = elan::preprocess_series(csv.series, config);
    const elan::Scalogram sg = elan::transform_series(filtered, config);
    ensure_dir(out_dir);
    elan::write_series_csv(filtered, out_dir + "/filtered.csv");
    elan::write_scalogram_csv(sg, out_dir + "/scalogram.csv");
    elan::write_scalogram_pgm(sg, out_dir + "/scalogram.pgm");
    write_resolved_config(config, out_dir);
    std::printf("%zu scales x %zu samples -> %s/scalogram.csv\n", sg.n_scales(), sg.n_times,
                out_dir.c_str());
}

void cmd_detect(const std::string& input, const ConfigFlags& flags, const std::string& out_dir) {
    const elan::AnalysisConfig config = flags.resolve();
    const elan::AnalysisResult r = elan::analyze_file(input, config);
    ensure_dir(out_dir);
    elan::write_events_jsonl(r.events, r.scalogram.dt, r.scalogram.t0, out_dir + "/events.jsonl");
    elan::write_events_csv(r.events, r.scalogram.dt, r.scalogram.t0, out_dir + "/events.csv");
    write_resolved_config(r.config, out_dir);
    std::printf("%zu events -> %s/events.jsonl\n", r.events.size(), out_dir.c_str());
}

void cmd_reconstruct(const std::string& events_path, const ConfigFlags& flags,
                     const std::string& out_dir, std::size_t n, double dt, double t0) {
    elan::AnalysisConfig config = flags.resolve();
    const std::vector<elan::ElementEvent> events = elan::read_events_jsonl(events_path);
    const elan::ScaleGrid grid = elan::resolve_grid(config, n, dt);
    const elan::ElementParams params(config.beta, config.mu, config.gamma);
    const elan::Scalogram sg = elan::reconstruct_scalogram(events, params, grid, n, dt, t0);
    ensure_dir(out_dir);
    elan::write_scalogram_csv(sg, out_dir + "/element_scalogram.csv");
    elan::write_scalogram_pgm(sg, out_dir + "/element_scalogram.pgm");
    write_resolved_config(config, out_dir);
    std::printf("%zu events -> %s/element_scalogram.csv\n", events.size(), out_dir.c_str());
}

void cmd_synth(const std::string& events_path, const ConfigFlags& flags, const std::string& out,
               std::size_t n, double dt, double t0, double sigma) {
    const elan::AnalysisConfig config = flags.resolve();
    const std::vector<elan::ElementEvent> events = elan::read_events_jsonl(events_path);
    const elan::ElementParams params(config.beta, config.mu, config.gamma);
    const elan::TimeSeries x =
        elan::synthesize(events, params, n, dt, t0, sigma, config.seed);
    elan::write_series_csv(x, out);
    std::printf("wrote %s (%zu samples, %zu events, sigma=%s)\n", out.c_str(), x.values.size(),
                events.size(), elan::format_sig9(sigma).c_str());
}

void cmd_theory(const ConfigFlags& flags) {
    const elan::AnalysisConfig config = flags.resolve();
    const elan::ElementParams p(config.beta, config.mu, config.gamma);
    const auto line = [](const char* key, double v) {
        std::printf("%s=%s\n", key, elan::format_sig9(v).c_str());
    };
    line("a_beta", elan::morse_norm(p.wavelet()));
    line("a_mu", elan::morse_norm(p.element_wavelet()));
    line("omega_beta", elan::peak_frequency(p.wavelet()));
    line("omega_mu", elan::peak_frequency(p.element_wavelet()));
    line("s_tilde_max", elan::s_tilde_max(p));
    line("eta", elan::eta(p));
    line("zeta_max", elan::zeta_max(p));
    line("frequency_factor", elan::element_frequency_factor(p));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavelet element analysis of sampled time series"};
    app.require_subcommand(1);

    std::string input, out_dir = "elan_out", out_file;
    std::size_t n_samples = 0;
    double dt = 1.0, t0 = 0.0, sigma = 0.0;

    ConfigFlags f_analyze, f_filter, f_transform, f_detect, f_reconstruct, f_synth, f_theory;
    using G = ConfigFlags::Group;
    const unsigned all = G::kWavelet | G::kElement | G::kGrid | G::kDetect | G::kFilter |
                         G::kCsv | G::kSeed;

    auto* analyze = app.add_subcommand("analyze", "full pipeline: filter, transform, detect, reconstruct");
    analyze->add_option("input", input, "input CSV")->required()->check(CLI::ExistingFile);
    analyze->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    f_analyze.attach(*analyze, all);
    analyze->callback([&] { cmd_analyze(input, f_analyze, out_dir); });

    auto* filter = app.add_subcommand("filter", "resample and high-pass a CSV series");
    filter->add_option("input", input, "input CSV")->required()->check(CLI::ExistingFile);
    filter->add_option("--out", out_file, "output CSV path")->default_str("filtered.csv");
    f_filter.attach(*filter, G::kFilter | G::kCsv);
    filter->callback([&] {
        cmd_filter(input, f_filter, out_file.empty() ? "filtered.csv" : out_file);
    });

    auto* transform = app.add_subcommand("transform", "resample, filter, and emit the wavelet scalogram");
    transform->add_option("input", input, "input CSV")->required()->check(CLI::ExistingFile);
    transform->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    f_transform.attach(*transform, G::kWavelet | G::kGrid | G::kFilter | G::kCsv);
    transform->callback([&] { cmd_transform(input, f_transform, out_dir); });

    auto* detect = app.add_subcommand("detect", "run the pipeline and emit the significant event list");
    detect->add_option("input", input, "input CSV")->required()->check(CLI::ExistingFile);
    detect->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    f_detect.attach(*detect, all);
    detect->callback([&] { cmd_detect(input, f_detect, out_dir); });

    auto* reconstruct = app.add_subcommand("reconstruct", "element scalogram from an event list (JSONL)");
    reconstruct->add_option("events", input, "events JSONL file")->required()->check(CLI::ExistingFile);
    reconstruct->add_option("--samples", n_samples, "series length the events refer to")->required();
    reconstruct->add_option("--dt", dt, "sample interval, time units")->capture_default_str();
    reconstruct->add_option("--t0", t0, "time of sample 0")->capture_default_str();
    reconstruct->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    f_reconstruct.attach(*reconstruct, G::kWavelet | G::kElement | G::kGrid);
    reconstruct->callback([&] {
        cmd_reconstruct(input, f_reconstruct, out_dir, n_samples, dt, t0);
    });

    auto* synth = app.add_subcommand("synth", "synthesize a series from an event list (JSONL)");
    synth->add_option("events", input, "events JSONL file (t_sample, c_abs, c_phase_rad, rho_samples)")
        ->required()
        ->check(CLI::ExistingFile);
    synth->add_option("--samples", n_samples, "series length")->required();
    synth->add_option("--dt", dt, "sample interval, time units")->capture_default_str();
    synth->add_option("--t0", t0, "time of sample 0")->capture_default_str();
    synth->add_option("--sigma", sigma, "white noise standard deviation")->capture_default_str();
    synth->add_option("--out", out_file, "output CSV path")->default_str("synth.csv");
    f_synth.attach(*synth, G::kWavelet | G::kElement | G::kSeed);
    synth->callback([&] {
        cmd_synth(input, f_synth, out_file.empty() ? "synth.csv" : out_file, n_samples, dt, t0,
                  sigma);
    });

    auto* theory = app.add_subcommand("theory", "print the element response constants for (beta, mu, gamma)");
    f_theory.attach(*theory, G::kWavelet | G::kElement);
    theory->callback([&] { cmd_theory(f_theory); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
