#pragma once

#include <vector>

#include "elan/types.hpp"

namespace elan {

/// Dated observations as parsed from disk: timestamps in fractional time
/// units (strictly increasing), one value each. Gaps are allowed here and
/// policed at resampling time.
struct RawSeries {
    std::vector<double> times;
    std::vector<double> values;
};

/// High-pass Butterworth filter parameters. cutoff_freq is in cycles per
/// time unit; it must sit below the Nyquist frequency of the series the
/// filter is applied to.
struct FilterSpec {
    int order = 3;
    double cutoff_freq = 0.0;
};

/// Linear interpolation onto a uniform grid from the first to the last
/// timestamp. Any gap between consecutive observations longer than
/// max_gap * dt is an error rather than something to silently bridge.
TimeSeries resample_uniform(const RawSeries& raw, double dt, double max_gap = 10.0);

/// Zero-phase high-pass: the Butterworth filter designed by bilinear
/// transform with frequency prewarping, applied forward and backward (so the
/// effective magnitude response is the squared single-pass response and
/// event times pick up no group delay). Edge transients are absorbed by
/// odd-reflection padding of 3x the filter's effective impulse length.
TimeSeries butterworth_highpass(const TimeSeries& x, const FilterSpec& spec);

/// One forward pass of the same filter (has phase delay); used to probe the
/// single-pass magnitude response.
TimeSeries butterworth_highpass_single(const TimeSeries& x, const FilterSpec& spec);

}  // namespace elan
