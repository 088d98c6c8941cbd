#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "elan/cwt.hpp"
#include "elan/element_theory.hpp"
#include "elan/types.hpp"

namespace elan {

/// A strict local maximum of |W| on the scale-time grid, inside the valid
/// region, with sub-grid refinement along each axis.
struct MaxPoint {
    std::size_t scale_index = 0;
    std::size_t time_index = 0;
    double t_hat = 0.0;      // refined time, samples (real)
    double s_hat = 0.0;      // refined scale, samples (real)
    cplx w_value;            // transform value at the grid point
    double modulus = 0.0;    // |W| interpolated at the refined peak
    double phase_hat = 0.0;  // arg W extrapolated to the refined peak
};

enum class NoiseMethod { monte_carlo, analytic_white };

/// Noise floor for significance testing. Thresholds are in modulus units,
/// one per scale row, calibrated so that on pure white noise of the
/// estimated level a detection anywhere in the valid region occurs with
/// probability ~alpha per series (family-wise).
struct NoiseModel {
    double sigma_hat = 0.0;
    std::vector<double> per_scale_threshold;
    double alpha = 0.05;
    NoiseMethod method = NoiseMethod::monte_carlo;
};

/// A recovered (or prescribed) element: time, complex amplitude, scale.
struct ElementEvent {
    double t_sample = 0.0;     // event time in samples from series start
    double c_abs = 0.0;        // |c|
    double c_phase = 0.0;      // arg c, radians
    double rho = 0.0;          // element scale, samples
    double omega_rho = 0.0;    // element peak frequency, radians/sample
    double significance = 0.0; // modulus / threshold at the detection scale
    bool overlap_flag = false; // within 2 envelope widths of another event
};

/// All grid points where |W| strictly exceeds its 8 neighbors, exceeds
/// `floor`, and lies in the valid region (neighbors must exist on the grid).
/// Refined (t_hat, s_hat) by per-axis quadratic interpolation of log|W|;
/// sorted by descending modulus.
std::vector<MaxPoint> find_maxima(const Scalogram& sg, double floor);

/// Noise level from the finest-scale row (median absolute deviation of the
/// real part, normalized by the discrete unit-noise deviation of that row)
/// plus per-scale detection thresholds. monte_carlo: empirical family-wise
/// quantile over `trials` seeded unit-noise transforms (cached per
/// configuration). analytic_white: closed-form per-scale standard deviation
/// with a Rayleigh quantile, Sidak-corrected over the valid-point count
/// (conservative). Throws if the finest row has fewer than 64 valid samples.
NoiseModel estimate_noise(const Scalogram& sg, const ElementParams& p, double alpha,
                          NoiseMethod method = NoiseMethod::monte_carlo,
                          int trials = 200);

/// Convert significant maxima into element events: c = 2 W / zeta_max,
/// rho = s_hat / s_tilde_max, omega via the peak-frequency map. Maxima below
/// their scale's threshold are dropped; retained events closer than 2
/// envelope widths are flagged. Throws if p's analysis wavelet disagrees
/// with the scalogram's.
std::vector<ElementEvent> estimate_elements(const Scalogram& sg,
                                            const std::vector<MaxPoint>& maxima,
                                            const NoiseModel& noise,
                                            const ElementParams& p);

/// Time spread (standard deviation, in samples) of one event's footprint in
/// the transform: the combined-order envelope at the peak-response scale.
/// The overlap diagnostic flags events closer than 2 of these widths.
double event_envelope_width(const ElementParams& p, double rho);

/// x(t) = sum_n Re{ c_n psi_mu((t - t_n)/rho_n) } + noise_sigma * N(0,1),
/// on n samples with spacing dt starting at t0. Deterministic given `seed`.
/// Event times must lie in [0, n).
TimeSeries synthesize(const std::vector<ElementEvent>& events, const ElementParams& p,
                      std::size_t n, double dt, double t0, double noise_sigma,
                      std::uint64_t seed);

/// Denoised element scalogram: W(tau, s) = (1/2) sum_n c_n
/// zeta((tau - t_n)/rho_n, s/rho_n) on the given grid.
Scalogram reconstruct_scalogram(const std::vector<ElementEvent>& events,
                                const ElementParams& p, const ScaleGrid& grid,
                                std::size_t n, double dt = 1.0, double t0 = 0.0);

/// Standard normal deviate by Box-Muller on the engine's raw 64-bit output,
/// so draws are identical across standard libraries.
double standard_normal(std::mt19937_64& rng);

}  // namespace elan
