#include "elan/morse.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "elan/fft.hpp"

namespace elan {

MorseParams::MorseParams(double beta, double gamma) : beta_(beta), gamma_(gamma) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("MorseParams: beta must be > 0");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("MorseParams: gamma must be > 0");
}

double log_morse_norm(double beta, double gamma) {
    // ln 2 + (beta/gamma) (1 + ln(gamma/beta))
    return std::log(2.0) + (beta / gamma) * (1.0 + std::log(gamma / beta));
}

double morse_norm(const MorseParams& params) {
    return std::exp(log_morse_norm(params.beta(), params.gamma()));
}

double morse_freq_at(const MorseParams& params, double omega) {
    if (omega <= 0.0) return 0.0;  // analytic: nothing at or below DC
    const double ln_val = log_morse_norm(params.beta(), params.gamma()) +
                          params.beta() * std::log(omega) -
                          std::pow(omega, params.gamma());
    if (ln_val < -745.0) return 0.0;  // below double underflow
    return std::exp(ln_val);
}

FrequencySamples morse_freq(const MorseParams& params, const std::vector<double>& omega) {
    FrequencySamples out;
    out.omega = omega;
    out.values.resize(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) {
        if (!std::isfinite(omega[i]))
            throw std::invalid_argument("morse_freq: non-finite frequency");
        out.values[i] = morse_freq_at(params, omega[i]);
    }
    return out;
}

double peak_frequency(const MorseParams& params) {
    return std::pow(params.beta() / params.gamma(), 1.0 / params.gamma());
}

std::vector<cplx> morse_time(const MorseParams& params, std::size_t n, double s,
                             double* energy_in_core) {
    if (n < 16) throw std::invalid_argument("morse_time: n must be >= 16");
    if (!(s > 0.0)) throw std::invalid_argument("morse_time: scale must be > 0");

    std::vector<cplx> spec(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = fft::bin_frequency(k, n);
        // Center the kernel at floor(n/2): multiply by e^{-i w c}. The shift
        // must be an integer so the phase is consistent under frequency
        // wrapping; for even n it reduces to (-1)^k.
        const double phase = -w * static_cast<double>(n / 2);
        spec[k] = morse_freq_at(params, s * w) * cplx(std::cos(phase), std::sin(phase));
    }
    fft::Dft dft(n);
    std::vector<cplx> psi = dft.backward(spec);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& v : psi) v *= inv_n;

    // Truncation diagnostic: energy should live in the central 90% of the window.
    double total = 0.0, core = 0.0;
    const std::size_t lo = n / 20, hi = n - n / 20;
    for (std::size_t t = 0; t < n; ++t) {
        const double e = std::norm(psi[t]);
        total += e;
        if (t >= lo && t < hi) core += e;
    }
    const double frac = total > 0.0 ? core / total : 1.0;
    if (energy_in_core) *energy_in_core = frac;
    if (frac < 0.999) {
        std::cerr << "morse_time: kernel at scale " << s << " holds only "
                  << frac * 100.0 << "% of its energy in the core of an n=" << n
                  << " window; results near this scale are truncated\n";
    }
    return psi;
}

void validate_series(const TimeSeries& x) {
    if (x.values.size() < 16)
        throw std::invalid_argument("TimeSeries: need at least 16 samples");
    if (!(x.dt > 0.0)) throw std::invalid_argument("TimeSeries: dt must be > 0");
    for (const double v : x.values)
        if (!std::isfinite(v)) throw std::invalid_argument("TimeSeries: non-finite value");
}

}  // namespace elan
