#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace elan {

using cplx = std::complex<double>;

/// Uniformly sampled real-valued signal. `dt` is the sample interval in
/// natural time units (years for the financial pipeline), `t0` the time of
/// the first sample in the same units.
struct TimeSeries {
    std::vector<double> values;
    double dt = 1.0;
    double t0 = 0.0;

    std::size_t size() const { return values.size(); }
    double time_of(double sample) const { return t0 + sample * dt; }
};

void validate_series(const TimeSeries& x);

}  // namespace elan
