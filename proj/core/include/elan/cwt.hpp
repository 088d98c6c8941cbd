#pragma once

#include <cstdint>
#include <vector>

#include "elan/morse.hpp"
#include "elan/types.hpp"

namespace elan {

/// Logarithmic scale grid. Scales are in samples; log2(scales) is equally
/// spaced with step 1/voxels_per_octave. scale_frequencies[k] is the peak
/// (scale) frequency of row k in radians/sample, strictly decreasing.
struct ScaleGrid {
    std::vector<double> scales;
    std::vector<double> scale_frequencies;
    int voxels_per_octave = 0;

    std::size_t size() const { return scales.size(); }
    /// Period of row k in samples, 2 pi / scale_frequencies[k].
    double period(std::size_t k) const { return 2.0 * M_PI / scale_frequencies[k]; }
};

/// Complex scale x time matrix of transform coefficients plus edge-validity
/// mask. Row k corresponds to grid.scales[k]; column i to input sample i.
/// Immutable once returned by the engine; safe to share across threads.
struct Scalogram {
    std::vector<cplx> coeffs;       // row-major, rows = scales
    std::vector<std::uint8_t> valid;  // same shape, 1 = outside edge cone
    ScaleGrid grid;
    MorseParams params{3.0, 1.0};
    std::size_t n_times = 0;
    double dt = 1.0;
    double t0 = 0.0;

    std::size_t n_scales() const { return grid.size(); }
    const cplx& at(std::size_t k, std::size_t i) const { return coeffs[k * n_times + i]; }
    cplx& at(std::size_t k, std::size_t i) { return coeffs[k * n_times + i]; }
    bool is_valid(std::size_t k, std::size_t i) const { return valid[k * n_times + i] != 0; }
    double modulus(std::size_t k, std::size_t i) const { return std::abs(at(k, i)); }
    double max_modulus() const;
};

/// Build a grid whose scale frequencies 2 pi / period cover
/// [2 pi / max_period, 2 pi / min_period] (periods in samples), log-spaced
/// with voxels_per_octave voxels per octave. s = peak_frequency * period / 2 pi.
ScaleGrid make_scale_grid(const MorseParams& params, double min_period_samples,
                          double max_period_samples, int voxels_per_octave);

/// Fast transform: forward DFT of x once, per-scale multiply by the sampled
/// Morse response at s*omega (real, so conjugation is a no-op), inverse DFT.
/// The sample mean of x is removed first. Boundary handling is circular; the
/// mask marks where that matters.
Scalogram cwt_fft(const TimeSeries& x, const MorseParams& params, const ScaleGrid& grid);

/// Verification path: direct O(N^2) summation per scale against morse_time
/// kernels spanning the full window, with circular indexing so it evaluates
/// the same operator as cwt_fft. Refuses n > max_n (cost guard).
Scalogram cwt_direct(const TimeSeries& x, const MorseParams& params, const ScaleGrid& grid,
                     std::size_t max_n = 8192);

/// Edge-validity mask: entry (k, i) is set iff sample i is more than
/// decay_multiplier * (envelope std of the scale-k kernel) samples away from
/// both boundaries.
std::vector<std::uint8_t> edge_mask(const MorseParams& params, const ScaleGrid& grid,
                                    std::size_t n, double decay_multiplier = 2.0);

}  // namespace elan
