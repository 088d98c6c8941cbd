#pragma once

#include <string>
#include <vector>

#include "elan/cwt.hpp"
#include "elan/detect.hpp"
#include "elan/io.hpp"

namespace elan {

/// Everything one end-to-end run produces, ready for serialization.
struct AnalysisResult {
    AnalysisConfig config;  // fully resolved (dt and periods filled in)
    std::size_t dropped_rows = 0;
    TimeSeries resampled;
    TimeSeries filtered;  // equals resampled when filtering is disabled
    Scalogram scalogram;
    Scalogram element_scalogram;
    NoiseModel noise;
    std::vector<ElementEvent> events;
};

/// The full pipeline: resample, high-pass (unless disabled), transform,
/// noise calibration, maxima, element estimation, scalogram reconstruction.
AnalysisResult run_analysis(const RawSeries& raw, const AnalysisConfig& config);

/// Stage pieces, for the stage-level commands. Both update the config they
/// are given: preprocess_series resolves dt (median raw spacing when unset),
/// transform_series resolves the period range (8 samples to an eighth of the
/// series when unset).
TimeSeries preprocess_series(const RawSeries& raw, AnalysisConfig& config);
Scalogram transform_series(const TimeSeries& x, AnalysisConfig& config);

/// The analysis scale grid for an n-sample series with spacing dt, applying
/// the config's period range (defaults: 8 samples up to an eighth of the
/// series). Writes the resolved range back into the config.
ScaleGrid resolve_grid(AnalysisConfig& config, std::size_t n, double dt);

/// read_csv followed by run_analysis.
AnalysisResult analyze_file(const std::string& csv_path, const AnalysisConfig& config);

/// Write the artifact set (filtered series, both scalograms as CSV and PGM,
/// events as JSON-lines and CSV, resolved config) plus a manifest with
/// content hashes. Returns the manifest path.
std::string write_outputs(const AnalysisResult& r, const std::string& out_dir);

/// Scalogram serialization, shared by write_outputs and the stage commands.
/// CSV: first row is the corner label then the sample timestamps; each data
/// row starts with its scale period (time units), then |W| per sample, all
/// at 9 significant digits. PGM: binary P5 log-magnitude, row 0 = finest
/// scale, 120 dB display floor.
void write_scalogram_csv(const Scalogram& sg, const std::string& path);
void write_scalogram_pgm(const Scalogram& sg, const std::string& path);

void write_series_csv(const TimeSeries& x, const std::string& path);
void write_events_jsonl(const std::vector<ElementEvent>& events, double dt, double t0,
                        const std::string& path);
void write_events_csv(const std::vector<ElementEvent>& events, double dt, double t0,
                      const std::string& path);

}  // namespace elan
