#include "elan/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace elan {

TimeSeries resample_uniform(const RawSeries& raw, double dt, double max_gap) {
    if (raw.times.size() != raw.values.size())
        throw std::invalid_argument("resample_uniform: times/values length mismatch");
    if (raw.times.size() < 16)
        throw std::invalid_argument("resample_uniform: need at least 16 observations");
    if (!(dt > 0.0)) throw std::invalid_argument("resample_uniform: dt must be > 0");
    if (!(max_gap >= 1.0))
        throw std::invalid_argument("resample_uniform: max_gap must be >= 1");
    for (std::size_t i = 1; i < raw.times.size(); ++i) {
        const double gap = raw.times[i] - raw.times[i - 1];
        if (!(gap > 0.0))
            throw std::invalid_argument("resample_uniform: timestamps not increasing");
        if (gap > max_gap * dt)
            throw std::invalid_argument(
                "resample_uniform: data gap exceeds max_gap sample intervals");
    }

    const double first = raw.times.front(), last = raw.times.back();
    // The slack absorbs rounding in (last - first) / dt: fractional-year
    // timestamps carry ~1e-13 absolute error each, which over thousands of
    // samples approaches 1e-7 of one interval. Overshooting by one grid point
    // is harmless (the lerp clamps); silently dropping the last sample of an
    // exactly daily series is not.
    const auto n = static_cast<std::size_t>(std::floor((last - first) / dt + 1e-6)) + 1;
    TimeSeries out;
    out.dt = dt;
    out.t0 = first;
    out.values.resize(n);
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = first + static_cast<double>(i) * dt;
        while (j + 2 < raw.times.size() && raw.times[j + 1] <= t) ++j;
        const double u = (t - raw.times[j]) / (raw.times[j + 1] - raw.times[j]);
        const double uc = std::clamp(u, 0.0, 1.0);
        out.values[i] = raw.values[j] + uc * (raw.values[j + 1] - raw.values[j]);
    }
    validate_series(out);
    return out;
}

namespace {

struct Biquad {
    double b0, b1, b2;  // numerator; a0 is normalized to 1
    double a1, a2;
    bool first_order;   // uses only b0, b1, a1
};

// High-pass Butterworth as second-order sections: analog prototype poles on
// the unit circle, the lowpass-to-highpass map s -> w_a/s with the prewarped
// cutoff w_a = tan(pi fc / fs), then the bilinear transform. All zeros land
// at z = 1; each section is normalized to unit gain at Nyquist (z = -1).
std::vector<Biquad> design_highpass(int order, double cutoff, double fs) {
    if (order < 1) throw std::invalid_argument("butterworth: order must be >= 1");
    if (order > 12) throw std::invalid_argument("butterworth: order above 12 unsupported");
    if (!(cutoff > 0.0) || !(cutoff < fs / 2.0))
        throw std::invalid_argument("butterworth: cutoff must be in (0, Nyquist)");

    const double wa = std::tan(M_PI * cutoff / fs);
    std::vector<Biquad> sections;
    // Conjugate pole pairs; for odd order the last "pair" is the real pole.
    for (int k = 0; k < order / 2; ++k) {
        const double theta = M_PI * (2.0 * k + 1.0) / (2.0 * order) + M_PI / 2.0;
        const std::complex<double> p_lp(std::cos(theta), std::sin(theta));
        const std::complex<double> q = wa / p_lp;             // analog highpass pole
        const std::complex<double> z = (1.0 + q) / (1.0 - q); // digital pole
        Biquad s{};
        s.first_order = false;
        s.a1 = -2.0 * z.real();
        s.a2 = std::norm(z);
        const double scale = (1.0 - s.a1 + s.a2) / 4.0;
        s.b0 = scale;
        s.b1 = -2.0 * scale;
        s.b2 = scale;
        sections.push_back(s);
    }
    if (order % 2 == 1) {
        const double q = -wa;                    // real analog highpass pole
        const double z = (1.0 + q) / (1.0 - q);  // digital pole
        Biquad s{};
        s.first_order = true;
        s.a1 = -z;
        s.a2 = 0.0;
        const double scale = (1.0 - s.a1) / 2.0;
        s.b0 = scale;
        s.b1 = -scale;
        s.b2 = 0.0;
        sections.push_back(s);
    }
    return sections;
}

double max_pole_radius(const std::vector<Biquad>& sections) {
    double r = 0.0;
    for (const Biquad& s : sections) {
        if (s.first_order) {
            r = std::max(r, std::abs(s.a1));
        } else {
            // |z|^2 = a2 for a conjugate pair.
            r = std::max(r, std::sqrt(std::max(s.a2, 0.0)));
        }
    }
    return r;
}

void apply_cascade(const std::vector<Biquad>& sections, std::vector<double>& x) {
    for (const Biquad& s : sections) {
        double w1 = 0.0, w2 = 0.0;  // direct form II state
        for (auto& v : x) {
            const double w0 = v - s.a1 * w1 - s.a2 * w2;
            v = s.b0 * w0 + s.b1 * w1 + s.b2 * w2;
            w2 = w1;
            w1 = w0;
        }
    }
}

std::vector<Biquad> design_for(const TimeSeries& x, const FilterSpec& spec) {
    validate_series(x);
    return design_highpass(spec.order, spec.cutoff_freq, 1.0 / x.dt);
}

}  // namespace

TimeSeries butterworth_highpass_single(const TimeSeries& x, const FilterSpec& spec) {
    const auto sections = design_for(x, spec);
    TimeSeries out = x;
    apply_cascade(sections, out.values);
    return out;
}

TimeSeries butterworth_highpass(const TimeSeries& x, const FilterSpec& spec) {
    const auto sections = design_for(x, spec);
    const std::size_t n = x.values.size();

    // Effective impulse length: samples until the slowest pole decays to 1e-10.
    const double r = max_pole_radius(sections);
    std::size_t impulse_len = 25;
    if (r > 0.0 && r < 1.0)
        impulse_len = static_cast<std::size_t>(std::ceil(-23.03 / std::log(r)));
    const std::size_t pad = std::min(3 * impulse_len, n - 1);

    // Odd reflection about each endpoint suppresses the startup transient of
    // both passes.
    std::vector<double> ext;
    ext.reserve(n + 2 * pad);
    for (std::size_t i = pad; i >= 1; --i)
        ext.push_back(2.0 * x.values.front() - x.values[i]);
    ext.insert(ext.end(), x.values.begin(), x.values.end());
    for (std::size_t i = 1; i <= pad; ++i)
        ext.push_back(2.0 * x.values.back() - x.values[n - 1 - i]);

    apply_cascade(sections, ext);
    std::reverse(ext.begin(), ext.end());
    apply_cascade(sections, ext);
    std::reverse(ext.begin(), ext.end());

    TimeSeries out = x;
    std::copy(ext.begin() + static_cast<std::ptrdiff_t>(pad),
              ext.begin() + static_cast<std::ptrdiff_t>(pad + n), out.values.begin());
    return out;
}

}  // namespace elan
