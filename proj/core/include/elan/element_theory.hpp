#pragma once

#include "elan/morse.hpp"
#include "elan/types.hpp"

namespace elan {

/// Parameters of the element analysis closed forms: analysis wavelet of order
/// `beta`, element of order `mu`, shared family `gamma`. All strictly
/// positive; gamma is shared by construction (one field).
class ElementParams {
  public:
    ElementParams(double beta, double mu, double gamma);

    double beta() const { return wavelet_.beta(); }
    double mu() const { return mu_; }
    double gamma() const { return wavelet_.gamma(); }

    /// Analysis wavelet (beta, gamma).
    const MorseParams& wavelet() const { return wavelet_; }
    /// Element wavelet (mu, gamma).
    MorseParams element_wavelet() const { return MorseParams(mu_, gamma()); }
    /// Combined order (beta + mu, gamma): the shape the transform of an
    /// element takes in time.
    MorseParams combined_wavelet() const { return MorseParams(beta() + mu_, gamma()); }

  private:
    MorseParams wavelet_;
    double mu_;
};

/// Transform of a unit element, in coordinates normalized by the element
/// scale rho: tau_tilde = (tau - t0)/rho, s_tilde = s/rho. The transform of
/// an element with coefficient c is then (c/2) zeta(tau_tilde, s_tilde).
cplx zeta(const ElementParams& p, double tau_tilde, double s_tilde);

/// zeta on the time ridge tau_tilde = 0, where it is real and positive:
/// (a_beta a_mu / 2 pi gamma) Gamma((beta+mu+1)/gamma)
///   * s_tilde^beta / (s_tilde^gamma + 1)^{(beta+mu+1)/gamma}.
double zeta_at_zero(const ElementParams& p, double s_tilde);

/// Normalized scale at which zeta_at_zero peaks: (beta/(mu+1))^{1/gamma}.
double s_tilde_max(const ElementParams& p);

/// Scale weighting at the peak:
/// (beta/(mu+1))^{beta/gamma} / (beta/(mu+1) + 1)^{(beta+mu+1)/gamma}.
double eta(const ElementParams& p);

/// Peak transform modulus of a unit element, independent of its scale:
/// (a_beta a_mu / 2 pi gamma) Gamma((beta+mu+1)/gamma) eta.
double zeta_max(const ElementParams& p);

/// Factor mapping a detected scale frequency to the element's own peak
/// frequency: omega_rho = omega_s_hat * factor with
/// factor = (omega_{mu,gamma}/omega_{beta,gamma}) * s_tilde_max.
double element_frequency_factor(const ElementParams& p);
double element_frequency(double omega_s_hat, const ElementParams& p);

/// Large/small scale-ratio limits of zeta, as a diagnostic cross-check.
/// Arguments are unnormalized (tau = offset from the event time, s = analysis
/// scale, rho = element scale); requires s/rho > 10 or s/rho < 0.1.
cplx zeta_asymptotic(const ElementParams& p, double tau, double s, double rho);

}  // namespace elan
