#include "elan/cwt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "elan/fft.hpp"
#include "elan/tabulation.hpp"

namespace elan {

double Scalogram::max_modulus() const {
    double m = 0.0;
    for (const auto& c : coeffs) m = std::max(m, std::abs(c));
    return m;
}

ScaleGrid make_scale_grid(const MorseParams& params, double min_period_samples,
                          double max_period_samples, int voxels_per_octave) {
    if (!(min_period_samples >= 2.0) || !(min_period_samples < max_period_samples))
        throw std::invalid_argument(
            "make_scale_grid: need 2 <= min_period < max_period (samples)");
    if (voxels_per_octave < 1)
        throw std::invalid_argument("make_scale_grid: voxels_per_octave must be >= 1");

    const double octaves = std::log2(max_period_samples / min_period_samples);
    const auto count =
        static_cast<std::size_t>(std::floor(octaves * voxels_per_octave + 1e-9)) + 1;
    const double w_peak = peak_frequency(params);

    ScaleGrid grid;
    grid.voxels_per_octave = voxels_per_octave;
    grid.scales.resize(count);
    grid.scale_frequencies.resize(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double period =
            min_period_samples * std::exp2(static_cast<double>(j) / voxels_per_octave);
        grid.scales[j] = w_peak * period / (2.0 * M_PI);
        grid.scale_frequencies[j] = 2.0 * M_PI / period;
    }
    return grid;
}

std::vector<std::uint8_t> edge_mask(const MorseParams& params, const ScaleGrid& grid,
                                    std::size_t n, double decay_multiplier) {
    if (!(decay_multiplier > 0.0))
        throw std::invalid_argument("edge_mask: decay_multiplier must be > 0");
    const double unit_std = morse_tabulation(params)->envelope_std();
    std::vector<std::uint8_t> mask(grid.size() * n, 0);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double margin = decay_multiplier * unit_std * grid.scales[k];
        for (std::size_t i = 0; i < n; ++i) {
            const double from_edge =
                std::min(static_cast<double>(i), static_cast<double>(n - 1 - i));
            mask[k * n + i] = from_edge > margin ? 1 : 0;
        }
    }
    return mask;
}

namespace {

Scalogram make_empty(const TimeSeries& x, const MorseParams& params, const ScaleGrid& grid) {
    validate_series(x);
    if (grid.size() == 0) throw std::invalid_argument("cwt: empty scale grid");
    Scalogram sg;
    sg.grid = grid;
    sg.params = params;
    sg.n_times = x.values.size();
    sg.dt = x.dt;
    sg.t0 = x.t0;
    sg.coeffs.resize(grid.size() * sg.n_times);
    sg.valid = edge_mask(params, grid, sg.n_times);
    return sg;
}

std::vector<double> demeaned(const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - mean;
    return out;
}

}  // namespace

Scalogram cwt_fft(const TimeSeries& x, const MorseParams& params, const ScaleGrid& grid) {
    Scalogram sg = make_empty(x, params, grid);
    const std::size_t n = sg.n_times;
    const fft::Dft dft(n);
    const std::vector<cplx> spectrum = dft.forward_real(demeaned(x.values));
    const std::vector<double> omega = fft::grid_frequencies(n);

    const auto n_scales = static_cast<std::ptrdiff_t>(grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t k = 0; k < n_scales; ++k) {
        std::vector<cplx> prod(n);
        const double s = grid.scales[static_cast<std::size_t>(k)];
        for (std::size_t j = 0; j < n; ++j)
            prod[j] = spectrum[j] * morse_freq_at(params, s * omega[j]);
        std::vector<cplx> row(n);
        dft.backward(prod.data(), row.data());
        const double inv_n = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
            sg.at(static_cast<std::size_t>(k), i) = row[i] * inv_n;
    }
    return sg;
}

Scalogram cwt_direct(const TimeSeries& x, const MorseParams& params, const ScaleGrid& grid,
                     std::size_t max_n) {
    Scalogram sg = make_empty(x, params, grid);
    const std::size_t n = sg.n_times;
    if (n > max_n)
        throw std::invalid_argument("cwt_direct: series longer than the O(N^2) guard");
    const std::vector<double> xs = demeaned(x.values);

    const auto n_scales = static_cast<std::ptrdiff_t>(grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t k = 0; k < n_scales; ++k) {
        // Kernel on the full window: sample t holds (1/s) psi((t - n/2)/s).
        const std::vector<cplx> kernel =
            morse_time(params, n, grid.scales[static_cast<std::size_t>(k)]);
        const std::size_t center = n / 2;
        for (std::size_t tau = 0; tau < n; ++tau) {
            cplx acc(0.0, 0.0);
            for (std::size_t t = 0; t < n; ++t) {
                const std::size_t idx = (t + n - tau + center) % n;
                acc += std::conj(kernel[idx]) * xs[t];
            }
            sg.at(static_cast<std::size_t>(k), tau) = acc;
        }
    }
    return sg;
}

}  // namespace elan
