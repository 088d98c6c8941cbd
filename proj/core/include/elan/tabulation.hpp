#pragma once

#include <memory>
#include <vector>

#include "elan/morse.hpp"
#include "elan/types.hpp"

namespace elan {

/// Dense tabulation of the unit-scale time-domain Morse wavelet
/// psi(t) = (1/2pi) \int_0^inf Psi(w) e^{iwt} dw on a symmetric grid, with
/// 4-point cubic interpolation for arbitrary arguments. Immutable once built;
/// shared through the registry below.
class MorseTabulation {
  public:
    static constexpr std::size_t kPoints = 65536;

    explicit MorseTabulation(const MorseParams& params);

    const MorseParams& params() const { return params_; }

    /// psi(t); zero outside the tabulated window.
    cplx operator()(double t) const;

    /// Value at the origin, a Gamma((beta+1)/gamma) / (2 pi gamma).
    cplx at_zero() const { return (*this)(0.0); }

    /// Standard deviation of t under the envelope weight |psi(t)|, in natural
    /// time units. Multiplied by the scale it gives the kernel's time spread.
    double envelope_std() const { return envelope_std_; }

    double window_half_width() const { return half_width_; }
    double step() const { return dt_; }

  private:
    MorseParams params_;
    std::vector<cplx> samples_;
    double dt_;
    double half_width_;
    double envelope_std_;
};

/// Process-wide cache of tabulations keyed by (beta, gamma). Construction is
/// serialized; lookups after construction are lock-free on the shared object.
std::shared_ptr<const MorseTabulation> morse_tabulation(const MorseParams& params);

/// Envelope time spread of the order-(beta,gamma) kernel at scale s, in samples.
double kernel_envelope_std(const MorseParams& params, double s);

}  // namespace elan
