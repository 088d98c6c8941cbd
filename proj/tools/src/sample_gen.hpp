#pragma once

// Synthetic stand-in for a dated financial series: slow trend, annual
// seasonality, five transient bursts at known dates, white noise. The bursts
// are what the analysis pipeline is expected to recover; everything else is
// there for the high-pass filter to remove.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "elan/dates.hpp"
#include "elan/detect.hpp"
#include "elan/io.hpp"
#include "elan/types.hpp"

namespace elan::sample {

struct ProxySpec {
    std::size_t n = 1024;                  // daily samples (~2.8 years)
    std::string start_date = "2018-07-02";
    double sigma = 0.02;
    std::uint64_t seed = 42;
};

/// Injected bursts: sample position, |c|, phase, scale (samples). Amplitudes
/// sit at 12x the default noise level.
inline std::vector<ElementEvent> proxy_events(double sigma) {
    const double a = 12.0 * sigma;
    std::vector<ElementEvent> ev(5);
    ev[0].t_sample = 160.0; ev[0].c_abs = a; ev[0].c_phase = 0.0;     ev[0].rho = 6.0;
    ev[1].t_sample = 352.0; ev[1].c_abs = a; ev[1].c_phase = 1.0472;  ev[1].rho = 8.0;
    ev[2].t_sample = 544.0; ev[2].c_abs = a; ev[2].c_phase = -1.5708; ev[2].rho = 12.0;
    ev[3].t_sample = 736.0; ev[3].c_abs = a; ev[3].c_phase = 2.2;     ev[3].rho = 8.0;
    ev[4].t_sample = 928.0; ev[4].c_abs = a; ev[4].c_phase = -1.1;    ev[4].rho = 6.0;
    return ev;
}

/// The element order the bursts are drawn from (and the default analysis
/// parameters recover): order-3 elements of the gamma = 1 family.
inline ElementParams proxy_params() { return ElementParams(3.0, 3.0, 1.0); }

inline TimeSeries generate_proxy(const ProxySpec& spec) {
    const double dt = 1.0 / kDaysPerYear;
    const double t0 = year_fraction_from_iso(spec.start_date);
    TimeSeries x = synthesize(proxy_events(spec.sigma), proxy_params(), spec.n, dt, t0,
                              spec.sigma, spec.seed);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double u = static_cast<double>(i) * dt;  // years since start
        x.values[i] += 2.0 + 0.1 * u + 0.3 * std::sin(2.0 * M_PI * u / 8.0) +
                       0.08 * std::cos(2.0 * M_PI * u + 0.3);
    }
    return x;
}

/// Daily CSV with ISO dates, as a data vendor would export it.
inline void write_proxy_csv(const TimeSeries& x, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << "date,value\n";
    for (std::size_t i = 0; i < x.values.size(); ++i)
        out << iso_from_year_fraction(x.time_of(static_cast<double>(i))) << ','
            << format_sig9(x.values[i]) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace elan::sample
