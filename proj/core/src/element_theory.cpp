#include "elan/element_theory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "elan/tabulation.hpp"

namespace elan {

ElementParams::ElementParams(double beta, double mu, double gamma)
    : wavelet_(beta, gamma), mu_(mu) {
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("ElementParams: mu must be > 0");
}

namespace {

// ln of s^beta / (s^gamma + 1)^{(beta+mu+1)/gamma}, robust at both ends of
// the scale axis.
double log_scale_profile(const ElementParams& p, double s_tilde) {
    const double g = p.gamma();
    const double sg = std::pow(s_tilde, g);
    const double log_sg1 =
        std::isfinite(sg) && sg < 1e300 ? std::log1p(sg) : g * std::log(s_tilde);
    return p.beta() * std::log(s_tilde) - (p.beta() + p.mu() + 1.0) / g * log_sg1;
}

double require_positive_scale(double s_tilde, const char* who) {
    if (!(s_tilde > 0.0) || !std::isfinite(s_tilde))
        throw std::invalid_argument(std::string(who) + ": scale must be > 0");
    return s_tilde;
}

}  // namespace

cplx zeta(const ElementParams& p, double tau_tilde, double s_tilde) {
    require_positive_scale(s_tilde, "zeta");
    const double log_k = log_morse_norm(p.beta(), p.gamma()) +
                         log_morse_norm(p.mu(), p.gamma()) -
                         log_morse_norm(p.beta() + p.mu(), p.gamma());
    const double amp = std::exp(log_k + log_scale_profile(p, s_tilde));
    if (amp == 0.0) return cplx(0.0, 0.0);
    const double stretch = std::pow(std::pow(s_tilde, p.gamma()) + 1.0, 1.0 / p.gamma());
    const auto tab = morse_tabulation(p.combined_wavelet());
    return amp * (*tab)(tau_tilde / stretch);
}

double zeta_at_zero(const ElementParams& p, double s_tilde) {
    require_positive_scale(s_tilde, "zeta_at_zero");
    const double g = p.gamma();
    const double log_val = log_morse_norm(p.beta(), g) + log_morse_norm(p.mu(), g) -
                           std::log(2.0 * M_PI * g) +
                           std::lgamma((p.beta() + p.mu() + 1.0) / g) +
                           log_scale_profile(p, s_tilde);
    return std::exp(log_val);
}

double s_tilde_max(const ElementParams& p) {
    return std::pow(p.beta() / (p.mu() + 1.0), 1.0 / p.gamma());
}

double eta(const ElementParams& p) {
    const double r = p.beta() / (p.mu() + 1.0);
    const double g = p.gamma();
    return std::exp(p.beta() / g * std::log(r) -
                    (p.beta() + p.mu() + 1.0) / g * std::log1p(r));
}

double zeta_max(const ElementParams& p) {
    const double g = p.gamma();
    const double log_val = log_morse_norm(p.beta(), g) + log_morse_norm(p.mu(), g) -
                           std::log(2.0 * M_PI * g) +
                           std::lgamma((p.beta() + p.mu() + 1.0) / g) +
                           std::log(eta(p));
    return std::exp(log_val);
}

double element_frequency_factor(const ElementParams& p) {
    const double w_mu = peak_frequency(p.element_wavelet());
    const double w_beta = peak_frequency(p.wavelet());
    return w_mu / w_beta * s_tilde_max(p);
}

double element_frequency(double omega_s_hat, const ElementParams& p) {
    if (!(omega_s_hat > 0.0))
        throw std::invalid_argument("element_frequency: omega_s_hat must be > 0");
    return omega_s_hat * element_frequency_factor(p);
}

cplx zeta_asymptotic(const ElementParams& p, double tau, double s, double rho) {
    require_positive_scale(s, "zeta_asymptotic");
    require_positive_scale(rho, "zeta_asymptotic");
    const double ratio = s / rho;
    if (ratio >= 0.1 && ratio <= 10.0)
        throw std::invalid_argument(
            "zeta_asymptotic: s/rho in [0.1, 10] is outside both asymptotic regimes");
    const double log_k = log_morse_norm(p.beta(), p.gamma()) +
                         log_morse_norm(p.mu(), p.gamma()) -
                         log_morse_norm(p.beta() + p.mu(), p.gamma());
    const auto tab = morse_tabulation(p.combined_wavelet());
    if (ratio > 10.0) {
        // Scale far above the element: (s/rho)^{-(mu+1)} psi_{beta+mu}(tau/s).
        const double amp = std::exp(log_k - (p.mu() + 1.0) * std::log(ratio));
        return amp * (*tab)(tau / s);
    }
    // Scale far below: (s/rho)^{beta} psi_{beta+mu}(tau/rho).
    const double amp = std::exp(log_k + p.beta() * std::log(ratio));
    return amp * (*tab)(tau / rho);
}

}  // namespace elan
