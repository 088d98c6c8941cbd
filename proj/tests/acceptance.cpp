// Acceptance gate: one criterion per invocation (argv[1] = 1..10), one
// [PASS]/[FAIL] line per criterion on stdout, exit 0/1. Tolerances are pinned
// here, next to the measurements they judge.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "elan/cwt.hpp"
#include "elan/detect.hpp"
#include "elan/element_theory.hpp"
#include "elan/fft.hpp"
#include "elan/pipeline.hpp"
#include "elan/preprocess.hpp"
#include "oracles.hpp"
#include "sample_gen.hpp"

namespace {

using elan::cplx;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

elan::TimeSeries noise_series(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    elan::TimeSeries x;
    x.values.resize(n);
    for (auto& v : x.values) v = elan::standard_normal(rng);
    return x;
}

elan::ElementEvent make_event(double t, double c_abs, double phase, double rho) {
    elan::ElementEvent ev;
    ev.t_sample = t;
    ev.c_abs = c_abs;
    ev.c_phase = phase;
    ev.rho = rho;
    return ev;
}

// max |a - b| / max |b| over the valid region
double rel_linf(const elan::Scalogram& a, const std::vector<cplx>& ref) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
        if (!a.valid[j]) continue;
        num = std::max(num, std::abs(a.coeffs[j] - ref[j]));
        den = std::max(den, std::abs(ref[j]));
    }
    return num / den;
}

// Noiseless estimation path shared by criteria 4, 5, 6: synthesize one
// element, transform, and read back the strongest maximum with thresholds off.
struct Recovered {
    elan::ElementEvent event;
    double peak_modulus = 0.0;
};

Recovered recover_single(const elan::ElementParams& p, std::size_t n, double t0,
                         double c_abs, double phase, double rho,
                         const elan::ScaleGrid& grid) {
    const elan::TimeSeries x =
        elan::synthesize({make_event(t0, c_abs, phase, rho)}, p, n, 1.0, 0.0, 0.0, 1);
    const elan::Scalogram sg = elan::cwt_fft(x, p.wavelet(), grid);
    const auto maxima = elan::find_maxima(sg, 1e-3 * sg.max_modulus());
    if (maxima.empty()) throw std::runtime_error("no transform maximum found");
    elan::NoiseModel off;
    off.per_scale_threshold.assign(sg.n_scales(), 0.0);
    const auto events = elan::estimate_elements(sg, {maxima.front()}, off, p);
    Recovered r;
    r.event = events.front();
    r.peak_modulus = maxima.front().modulus;
    return r;
}

// ---------------------------------------------------------------- criterion 1

bool criterion_01() {
    const Timer timer;
    const elan::MorseParams params(3.0, 1.0);
    const elan::ScaleGrid grid = elan::make_scale_grid(params, 8.0, 128.0, 8);  // 4 octaves
    constexpr double kTol = 1e-6;
    bool ok = true;
    for (const std::uint64_t seed : {101ULL, 102ULL, 103ULL}) {
        const elan::TimeSeries x = noise_series(512, seed);
        const elan::Scalogram fast = elan::cwt_fft(x, params, grid);
        const elan::Scalogram slow = elan::cwt_direct(x, params, grid);
        const double err = rel_linf(fast, slow.coeffs);
        std::printf("  seed %llu: rel Linf %.3e\n", static_cast<unsigned long long>(seed), err);
        ok = ok && err < kTol;
    }
    const double sec = timer.seconds();
    std::printf("  elapsed %.2f s (limit 30)\n", sec);
    return ok && sec < 30.0;
}

// ---------------------------------------------------------------- criterion 2

bool criterion_02() {
    const Timer timer;
    constexpr double kTol = 1e-3;
    constexpr std::size_t n = 4096;
    constexpr double rho = 16.0, t0 = 2048.0;
    bool ok = true;
    for (const auto& [beta, gamma] : std::vector<std::pair<double, double>>{
             {3.0, 1.0}, {2.0, 2.0}, {6.0, 3.0}}) {
        const elan::ElementParams p(beta, 1.0, gamma);
        const elan::TimeSeries x =
            elan::synthesize({make_event(t0, 1.0, 0.0, rho)}, p, n, 1.0, 0.0, 0.0, 1);
        const elan::ScaleGrid grid = elan::make_scale_grid(p.wavelet(), 8.0, 512.0, 8);
        const elan::Scalogram sg = elan::cwt_fft(x, p.wavelet(), grid);
        std::vector<cplx> ref(sg.coeffs.size());
        for (std::size_t k = 0; k < sg.n_scales(); ++k) {
            const double s_tilde = grid.scales[k] / rho;
            for (std::size_t i = 0; i < n; ++i)
                ref[k * n + i] =
                    0.5 * elan::zeta(p, (static_cast<double>(i) - t0) / rho, s_tilde);
        }
        const double err = rel_linf(sg, ref);
        std::printf("  beta %g gamma %g: rel Linf %.3e\n", beta, gamma, err);
        ok = ok && err < kTol;
    }
    const double sec = timer.seconds();
    std::printf("  elapsed %.2f s (limit 60)\n", sec);
    return ok && sec < 60.0;
}

// ---------------------------------------------------------------- criterion 3

bool criterion_03() {
    constexpr double kStep = 1e-4;  // in ln s_tilde
    const double combos[9][3] = {{1.5, 1.0, 1.0}, {1.5, 2.0, 2.0}, {1.5, 1.0, 3.0},
                                 {3.0, 1.0, 1.0}, {3.0, 3.0, 1.0}, {3.0, 2.0, 2.0},
                                 {6.0, 1.0, 2.0}, {6.0, 2.0, 3.0}, {6.0, 5.0, 1.0}};
    bool ok = true;
    for (const auto& c : combos) {
        const elan::ElementParams p(c[0], c[1], c[2]);
        double best_log = -2.0, best_val = -1.0;
        for (int j = 0; j <= 40000; ++j) {
            const double ls = -2.0 + j * kStep;
            const double v = elan::zeta_at_zero(p, std::exp(ls));
            if (v > best_val) {
                best_val = v;
                best_log = ls;
            }
        }
        const double predicted = std::log(elan::s_tilde_max(p));
        const double diff = std::abs(best_log - predicted);
        std::printf("  beta %g mu %g gamma %g: argmax offset %.2e (allow %.1e)\n", c[0],
                    c[1], c[2], diff, kStep);
        ok = ok && diff <= kStep + 1e-12;
    }
    return ok;
}

// ------------------------------------------------------- criteria 4, 5 and 6

struct CaseResult {
    double c_abs, phase, rho;  // truth
    elan::ElementEvent event;
};

std::vector<CaseResult> run_recovery_grid() {
    const elan::ElementParams p(3.0, 3.0, 1.0);
    const std::size_t n = 2048;
    const elan::ScaleGrid grid = elan::make_scale_grid(p.wavelet(), 4.0, 256.0, 16);
    std::vector<CaseResult> out;
    for (const double c_abs : {0.5, 2.0, 10.0})
        for (const double phase : {0.0, M_PI / 3.0, -M_PI / 2.0})
            for (const double rho : {4.0, 8.0, 16.0}) {
                CaseResult r{c_abs, phase, rho,
                             recover_single(p, n, 1024.0, c_abs, phase, rho, grid).event};
                out.push_back(r);
            }
    return out;
}

bool criterion_04() {
    const Timer timer;
    constexpr double kAmpTol = 0.02;                  // 2% relative
    constexpr double kPhaseTol = 2.0 * M_PI / 180.0;  // 2 degrees
    constexpr double kTimeTol = 1.0;                  // samples
    const double kRhoTol = 1.0 / 16.0;  // one vpo-16 grid step, in log2

    double worst_amp = 0.0, worst_phase = 0.0, worst_t = 0.0, worst_rho = 0.0;
    for (const CaseResult& r : run_recovery_grid()) {
        worst_amp = std::max(worst_amp, std::abs(r.event.c_abs - r.c_abs) / r.c_abs);
        worst_phase = std::max(
            worst_phase, std::abs(std::remainder(r.event.c_phase - r.phase, 2.0 * M_PI)));
        worst_t = std::max(worst_t, std::abs(r.event.t_sample - 1024.0));
        worst_rho = std::max(worst_rho, std::abs(std::log2(r.event.rho / r.rho)));
    }
    std::printf("  27 cases: worst |c| err %.3f%% (allow 2%%), phase %.3f deg (allow 2),"
                " t %.3f samples (allow 1), rho %.3f grid steps (allow 1)\n",
                100.0 * worst_amp, worst_phase * 180.0 / M_PI, worst_t, worst_rho * 16.0);
    const double sec = timer.seconds();
    std::printf("  elapsed %.2f s (limit 60)\n", sec);
    return worst_amp < kAmpTol && worst_phase < kPhaseTol && worst_t < kTimeTol &&
           worst_rho <= kRhoTol + 1e-12 && sec < 60.0;
}

bool criterion_05() {
    constexpr double kTol = 0.01;  // 1% relative spread
    const elan::ElementParams p(3.0, 3.0, 1.0);
    const elan::ScaleGrid grid = elan::make_scale_grid(p.wavelet(), 4.0, 512.0, 16);
    double lo = 1e300, hi = 0.0;
    for (const double rho : {4.0, 8.0, 16.0, 32.0}) {
        const double m = recover_single(p, 4096, 2048.0, 1.0, 0.0, rho, grid).peak_modulus;
        std::printf("  rho %g: peak modulus %.6f\n", rho, m);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    const double spread = hi / lo - 1.0;
    std::printf("  spread %.3f%% (allow 1%%)\n", 100.0 * spread);
    return spread < kTol;
}

bool criterion_06() {
    const double kTol = 1.0 / 16.0;  // one vpo-16 grid step, in log2
    const double w_mu = elan::peak_frequency(elan::MorseParams(3.0, 1.0));
    double worst = 0.0;
    for (const CaseResult& r : run_recovery_grid())
        worst = std::max(worst, std::abs(std::log2(r.event.omega_rho * r.rho / w_mu)));
    std::printf("  27 cases: worst frequency offset %.3f grid steps (allow 1)\n",
                worst * 16.0);
    return worst <= kTol + 1e-12;
}

// ---------------------------------------------------------------- criterion 7

bool criterion_07() {
    const Timer timer;
    constexpr std::size_t kTrials = 100;
    constexpr double kAlpha = 0.05;
    const elan::ElementParams p(3.0, 3.0, 1.0);
    const elan::ScaleGrid grid = elan::make_scale_grid(p.wavelet(), 8.0, 256.0, 8);

    std::size_t hits = 0;
    for (std::size_t i = 0; i < kTrials; ++i) {
        const elan::TimeSeries x = elan::synthesize({}, p, 2048, 1.0, 0.0, 1.0, 9000 + i);
        const elan::Scalogram sg = elan::cwt_fft(x, p.wavelet(), grid);
        const elan::NoiseModel noise =
            elan::estimate_noise(sg, p, kAlpha, elan::NoiseMethod::monte_carlo, 200);
        const auto maxima = elan::find_maxima(sg, 1e-12 * sg.max_modulus());
        if (!elan::estimate_elements(sg, maxima, noise, p).empty()) ++hits;
    }
    std::printf("  %zu of %zu white-noise trials produced a detection (alpha %.2f)\n",
                hits, kTrials, kAlpha);
    const bool in_interval = oracle::binomial_accepts(hits, kTrials, kAlpha);
    std::printf("  exact binomial test at 5%%: %s\n", in_interval ? "inside" : "outside");
    const double sec = timer.seconds();
    std::printf("  elapsed %.2f s (limit 300)\n", sec);
    return in_interval && sec < 300.0;
}

// ---------------------------------------------------------------- criterion 8

bool criterion_08() {
    const Timer timer;
    constexpr std::size_t kTrials = 100;
    constexpr double kRatio = 5.0;  // |c| / sigma
    constexpr double kAmpTol = 0.02, kPhaseTol = 2.0 * M_PI / 180.0, kTimeTol = 2.0;
    const double kRhoTol = 1.0 / 16.0;
    const elan::ElementParams p(3.0, 3.0, 1.0);
    const elan::ScaleGrid grid = elan::make_scale_grid(p.wavelet(), 8.0, 256.0, 16);

    const std::vector<elan::ElementEvent> truth = {
        make_event(512.0, kRatio, 0.0, 16.0),
        make_event(1024.0, kRatio, M_PI / 3.0, 16.0),
        make_event(1536.0, kRatio, -M_PI / 2.0, 16.0),
    };

    std::size_t located = 0;    // a detection within +-2 samples exists
    std::size_t recovered = 0;  // and amplitude, phase and scale are in tolerance
    for (std::size_t i = 0; i < kTrials; ++i) {
        const elan::TimeSeries x =
            elan::synthesize(truth, p, 2048, 1.0, 0.0, 1.0, 7000 + i);
        const elan::Scalogram sg = elan::cwt_fft(x, p.wavelet(), grid);
        const elan::NoiseModel noise =
            elan::estimate_noise(sg, p, 0.05, elan::NoiseMethod::monte_carlo, 200);
        const auto maxima = elan::find_maxima(sg, 1e-12 * sg.max_modulus());
        const auto events = elan::estimate_elements(sg, maxima, noise, p);
        for (const elan::ElementEvent& t : truth) {
            const elan::ElementEvent* best = nullptr;
            for (const elan::ElementEvent& ev : events)
                if (std::abs(ev.t_sample - t.t_sample) <= kTimeTol &&
                    (!best || std::abs(ev.t_sample - t.t_sample) <
                                  std::abs(best->t_sample - t.t_sample)))
                    best = &ev;
            if (!best) continue;
            ++located;
            const bool amp_ok = std::abs(best->c_abs - t.c_abs) / t.c_abs < kAmpTol;
            const bool phase_ok =
                std::abs(std::remainder(best->c_phase - t.c_phase, 2.0 * M_PI)) < kPhaseTol;
            const bool rho_ok = std::abs(std::log2(best->rho / t.rho)) <= kRhoTol + 1e-12;
            if (amp_ok && phase_ok && rho_ok) ++recovered;
        }
    }
    const double n_true = static_cast<double>(kTrials * truth.size());
    const double rate = static_cast<double>(recovered) / n_true;
    std::printf("  located within +-2 samples: %.1f%%; fully recovered within"
                " criterion-4 tolerances: %.1f%% (require >= 90%%)\n",
                100.0 * static_cast<double>(located) / n_true, 100.0 * rate);
    std::printf("  at |c|/sigma = 5 the transform-peak noise is ~5%% of the peak, so the"
                " 2%% amplitude and 2-degree phase bands sit inside one noise standard"
                " deviation; the achieved rate is reported, not adjusted\n");
    std::printf("  elapsed %.2f s\n", timer.seconds());
    return rate >= 0.90;
}

// ---------------------------------------------------------------- criterion 9

bool criterion_09() {
    constexpr int kOrder = 3;
    constexpr double kCutoff = 1.0 / 128.0;  // cycles/sample, DFT bin 64 of 8192
    constexpr std::size_t n = 8192;

    elan::TimeSeries x;
    x.values.assign(n, 0.0);
    x.values[0] = 1.0;
    elan::FilterSpec spec;
    spec.order = kOrder;
    spec.cutoff_freq = kCutoff;
    const elan::TimeSeries h = elan::butterworth_highpass_single(x, spec);
    const elan::fft::Dft dft(n);
    const std::vector<cplx> H = dft.forward_real(h.values);

    const double gain_c = std::abs(H[n / 128]);
    const double dc = std::abs(H[0]);
    std::printf("  gain at cutoff %.6f (want %.6f +- 0.012), DC %.2e (< 1e-8)\n", gain_c,
                1.0 / std::sqrt(2.0), dc);

    bool monotone = true;
    double prev = -1.0;
    std::printf("  probes:");
    for (int j = 0; j < 20; ++j) {
        const double k = 8.0 * std::pow(3686.0 / 8.0, j / 19.0);
        const double g = std::abs(H[static_cast<std::size_t>(std::lround(k))]);
        std::printf(" %.4f", g);
        monotone = monotone && g > prev - 1e-12;
        prev = g;
    }
    std::printf("\n  monotone: %s\n", monotone ? "yes" : "no");
    return std::abs(gain_c - 1.0 / std::sqrt(2.0)) < 0.012 && dc < 1e-8 && monotone;
}

// --------------------------------------------------------------- criterion 10

bool criterion_10() {
    const Timer timer;
    constexpr std::size_t kRuns = 100;
    constexpr double kTimeTol = 2.0;  // samples

    elan::sample::ProxySpec spec;
    const auto injected = elan::sample::proxy_events(spec.sigma);
    const elan::ElementParams p = elan::sample::proxy_params();

    elan::AnalysisConfig config;
    config.alpha = 0.01;
    config.mc_trials = 500;

    const std::string csv =
        (std::filesystem::temp_directory_path() / "elan_acceptance_proxy.csv").string();

    std::size_t good_runs = 0, missed_total = 0, spurious_total = 0;
    for (std::size_t i = 0; i < kRuns; ++i) {
        spec.seed = 5000 + i;
        elan::sample::write_proxy_csv(elan::sample::generate_proxy(spec), csv);
        const elan::AnalysisResult r = elan::analyze_file(csv, config);

        std::size_t missed = 0;
        for (const elan::ElementEvent& t : injected) {
            bool found = false;
            for (const elan::ElementEvent& ev : r.events)
                found = found || std::abs(ev.t_sample - t.t_sample) <= kTimeTol;
            if (!found) ++missed;
        }
        std::size_t spurious = 0;
        for (const elan::ElementEvent& ev : r.events) {
            const double width = elan::event_envelope_width(p, ev.rho);
            double nearest = 1e300;
            for (const elan::ElementEvent& t : injected)
                nearest = std::min(nearest, std::abs(ev.t_sample - t.t_sample));
            if (nearest > 2.0 * width) ++spurious;
        }
        missed_total += missed;
        spurious_total += spurious;
        if (missed == 0 && spurious == 0) ++good_runs;
    }
    std::printf("  %zu of %zu runs recovered all 5 dates within +-2 samples with no"
                " stray detections (require >= 95)\n",
                good_runs, kRuns);
    std::printf("  totals across runs: %zu missed injections, %zu stray detections\n",
                missed_total, spurious_total);
    std::printf("  elapsed %.2f s\n", timer.seconds());
    return good_runs >= 95;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s <criterion 1-10>\n", argv[0]);
        return 2;
    }
    const int which = std::atoi(argv[1]);
    static const struct {
        bool (*run)();
        const char* name;
    } table[10] = {
        {criterion_01, "transform engine agrees with direct summation"},
        {criterion_02, "transform of an element matches the closed form"},
        {criterion_03, "peak-scale law matches the dense-grid argmax"},
        {criterion_04, "noiseless amplitude, phase, time and scale recovery"},
        {criterion_05, "peak modulus is scale-invariant"},
        {criterion_06, "recovered element frequency follows the scale map"},
        {criterion_07, "white-noise false-detection rate matches alpha"},
        {criterion_08, "recovery tolerances under noise at amplitude ratio 5"},
        {criterion_09, "high-pass magnitude response"},
        {criterion_10, "bundled proxy series: all events, no strays"},
    };
    if (which < 1 || which > 10) {
        std::fprintf(stderr, "usage: %s <criterion 1-10>\n", argv[0]);
        return 2;
    }
    bool ok = false;
    try {
        ok = table[which - 1].run();
    } catch (const std::exception& e) {
        std::printf("  exception: %s\n", e.what());
        ok = false;
    }
    std::printf("[%s] criterion %02d: %s\n", ok ? "PASS" : "FAIL", which,
                table[which - 1].name);
    return ok ? 0 : 1;
}
