#include "elan/tabulation.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "elan/fft.hpp"

namespace elan {

namespace {

// Smallest frequency beyond the peak where the response has fallen to `tail`
// times its peak value of 2.
double cutoff_frequency(const MorseParams& p, double tail) {
    const double target = 2.0 * tail;
    double lo = peak_frequency(p);
    double hi = lo;
    do {
        hi *= 2.0;
    } while (morse_freq_at(p, hi) > target && hi < 1e8);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (morse_freq_at(p, mid) > target ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace

MorseTabulation::MorseTabulation(const MorseParams& params) : params_(params) {
    // Sampling step: resolve the carrier with >= 192 points per cycle (the
    // cubic interpolant is then good to ~1e-7 for the orders we use), and
    // keep the Nyquist rate above the frequency where the response is
    // negligible. The window that kPoints samples then span is wide enough
    // that folded tails stay below ~1e-6 even for the slowest-decaying
    // low-order kernels.
    const double w_peak = peak_frequency(params);
    const double w_cut = cutoff_frequency(params, 1e-12);
    dt_ = std::min(M_PI / w_cut, 2.0 * M_PI / (192.0 * w_peak));
    half_width_ = 0.5 * static_cast<double>(kPoints) * dt_;

    // Inverse transform via one dense DFT: sample Psi on the DFT grid of the
    // tabulation window and center the result.
    const std::size_t n = kPoints;
    std::vector<cplx> spec(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = fft::bin_frequency(k, n) / dt_;
        const double phase = -fft::bin_frequency(k, n) * (static_cast<double>(n) / 2.0);
        spec[k] = morse_freq_at(params, w) * cplx(std::cos(phase), std::sin(phase));
    }
    fft::Dft dft(n);
    samples_ = dft.backward(spec);
    const double norm = 1.0 / (static_cast<double>(n) * dt_);
    for (auto& v : samples_) v *= norm;

    double wsum = 0.0, mean = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = (static_cast<double>(j) - static_cast<double>(n) / 2.0) * dt_;
        const double w = std::abs(samples_[j]);
        wsum += w;
        mean += w * t;
    }
    mean /= wsum;
    double var = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = (static_cast<double>(j) - static_cast<double>(n) / 2.0) * dt_;
        const double w = std::abs(samples_[j]);
        var += w * (t - mean) * (t - mean);
    }
    envelope_std_ = std::sqrt(var / wsum);
}

cplx MorseTabulation::operator()(double t) const {
    const double x = t / dt_ + static_cast<double>(kPoints) / 2.0;
    const auto n = static_cast<std::ptrdiff_t>(kPoints);
    const auto j = static_cast<std::ptrdiff_t>(std::floor(x));
    if (j < 1 || j + 2 >= n) return cplx(0.0, 0.0);
    // 4-point cubic Lagrange on the uniform grid.
    const double u = x - static_cast<double>(j);
    const double c0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
    const double c1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    const double c2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    const double c3 = (u + 1.0) * u * (u - 1.0) / 6.0;
    return c0 * samples_[j - 1] + c1 * samples_[j] + c2 * samples_[j + 1] +
           c3 * samples_[j + 2];
}

std::shared_ptr<const MorseTabulation> morse_tabulation(const MorseParams& params) {
    static std::mutex mutex;
    static std::map<std::pair<double, double>, std::shared_ptr<const MorseTabulation>> cache;
    const auto key = std::make_pair(params.beta(), params.gamma());
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto tab = std::make_shared<const MorseTabulation>(params);
    cache.emplace(key, tab);
    return tab;
}

double kernel_envelope_std(const MorseParams& params, double s) {
    return morse_tabulation(params)->envelope_std() * s;
}

}  // namespace elan
