#pragma once

#include <vector>

#include "elan/types.hpp"

namespace elan {

/// Generalized Morse wavelet parameters: `beta` (order) controls low-frequency
/// behavior and oscillation count, `gamma` (family) the high-frequency decay.
/// Immutable; both must be strictly positive.
class MorseParams {
  public:
    MorseParams(double beta, double gamma);

    double beta() const { return beta_; }
    double gamma() const { return gamma_; }

    bool operator==(const MorseParams& o) const {
        return beta_ == o.beta_ && gamma_ == o.gamma_;
    }

  private:
    double beta_;
    double gamma_;
};

/// Frequency-domain samples of a Morse wavelet on a caller-supplied grid.
/// Entries at negative frequencies are identically zero (analyticity).
struct FrequencySamples {
    std::vector<double> omega;
    std::vector<double> values;
};

/// Normalizing constant a_{beta,gamma} = 2 (e gamma / beta)^(beta/gamma),
/// evaluated in log space. The peak of the frequency response is then
/// exactly 2.
double morse_norm(const MorseParams& params);

/// ln of morse_norm, for downstream log-space products.
double log_morse_norm(double beta, double gamma);

/// Frequency response a w^beta e^(-w^gamma) for w > 0, zero for w <= 0.
double morse_freq_at(const MorseParams& params, double omega);
FrequencySamples morse_freq(const MorseParams& params, const std::vector<double>& omega);

/// Mode of the frequency response: (beta/gamma)^(1/gamma).
double peak_frequency(const MorseParams& params);

/// Time-domain samples at scale `s`: inverse DFT of the response sampled on
/// the length-n DFT grid at s*omega_k, centered at floor(n/2). Includes the
/// 1/s amplitude normalization used by the transform, i.e. sample t holds
/// (1/s) psi((t - floor(n/2)) / s).
///
/// If `energy_in_core` is non-null it receives the fraction of the kernel's
/// energy inside the central 90% of the window; a value below 0.999 means
/// the kernel does not decay within the window (scale too large for n) and
/// a warning is printed.
std::vector<cplx> morse_time(const MorseParams& params, std::size_t n, double s,
                             double* energy_in_core = nullptr);

}  // namespace elan
