#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "elan/detect.hpp"
#include "elan/preprocess.hpp"

namespace elan {

/// Run-level parameter set. Defaults are the library's exemplar values;
/// a JSON config file overrides defaults and command-line flags override
/// both. Periods and dt are in time units (fractional years for dated data);
/// zero means "choose from the data" where noted.
struct AnalysisConfig {
    double beta = 3.0;
    double gamma = 1.0;
    double mu = 3.0;               // element order; default matches beta
    double min_period = 0.0;       // 0: 8 samples
    double max_period = 0.0;       // 0: an eighth of the span
    int voxels_per_octave = 16;
    double alpha = 0.05;
    std::string noise_method = "monte-carlo";  // or "analytic-white"
    int mc_trials = 200;
    bool filter_enabled = true;
    double cutoff_period = 1.0 / 3.0;  // high-pass cutoff, time units
    int filter_order = 3;
    std::uint64_t seed = 42;
    double dt = 0.0;      // target sample interval; 0: median raw spacing
    double max_gap = 10.0;
    std::string date_column = "date";
    std::string value_column = "value";
};

/// Throws std::invalid_argument naming the offending field.
void validate_config(const AnalysisConfig& c);

/// Overlay a JSON config (text or file) onto `base`. Unknown keys are
/// errors; the result is validated.
AnalysisConfig config_from_json_text(const std::string& json_text, AnalysisConfig base);
AnalysisConfig load_config_file(const std::string& path, AnalysisConfig base);

/// Resolved config as pretty JSON, 9+ significant digits.
std::string config_json_text(const AnalysisConfig& c);

struct CsvReadResult {
    RawSeries series;                    // times as fractional years
    std::vector<std::string> iso_dates;  // per retained row (empty for numeric input)
    std::size_t dropped = 0;             // rows skipped via missing markers
};

/// Parse a header + date/value column CSV. The date column accepts ISO-8601
/// dates or plain fractional-year numbers; rows whose value matches a
/// missing marker are dropped and counted. Malformed rows report their line
/// number; timestamps must come out strictly increasing.
CsvReadResult read_csv(const std::string& path, const std::string& date_column,
                       const std::string& value_column,
                       const std::vector<std::string>& missing_markers = {"", "."});

/// Events as written by write_outputs (one JSON object per line).
std::vector<ElementEvent> read_events_jsonl(const std::string& path);

/// Shortest of %.9g formatting: the serialization precision for values.
std::string format_sig9(double v);

/// Hex SHA-256 of a file's bytes (for the run manifest).
std::string sha256_file(const std::string& path);

}  // namespace elan
