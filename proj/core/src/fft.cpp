#include "elan/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace elan::fft {

namespace {
// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Dft::Dft(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("Dft: zero length");
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_complex* a = fftw_alloc_complex(n);
    fftw_complex* b = fftw_alloc_complex(n);
    if (!a || !b) {
        fftw_free(a);
        fftw_free(b);
        throw std::runtime_error("Dft: allocation failed");
    }
    // Out-of-place plans (execution requires matching in-place-ness) with
    // FFTW_UNALIGNED so they run on ordinary std::vector storage.
    plan_fwd_ = fftw_plan_dft_1d(static_cast<int>(n), a, b, FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_bwd_ = fftw_plan_dft_1d(static_cast<int>(n), a, b, FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(b);
    fftw_free(a);
    if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("Dft: planning failed");
}

Dft::~Dft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

namespace {
void run(void* plan, const cplx* in, cplx* out, std::size_t n) {
    if (in == out) {
        // The plans are out-of-place; stage through a copy for in-place calls.
        std::vector<cplx> tmp(in, in + n);
        fftw_execute_dft(static_cast<fftw_plan>(plan),
                         reinterpret_cast<fftw_complex*>(tmp.data()),
                         reinterpret_cast<fftw_complex*>(out));
        return;
    }
    fftw_execute_dft(static_cast<fftw_plan>(plan),
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}
}  // namespace

void Dft::forward(const cplx* in, cplx* out) const { run(plan_fwd_, in, out, n_); }

void Dft::backward(const cplx* in, cplx* out) const { run(plan_bwd_, in, out, n_); }

std::vector<cplx> Dft::forward(const std::vector<cplx>& in) const {
    if (in.size() != n_) throw std::invalid_argument("Dft::forward: length mismatch");
    std::vector<cplx> out(n_);
    forward(in.data(), out.data());
    return out;
}

std::vector<cplx> Dft::backward(const std::vector<cplx>& in) const {
    if (in.size() != n_) throw std::invalid_argument("Dft::backward: length mismatch");
    std::vector<cplx> out(n_);
    backward(in.data(), out.data());
    return out;
}

std::vector<cplx> Dft::forward_real(const std::vector<double>& in) const {
    if (in.size() != n_) throw std::invalid_argument("Dft::forward_real: length mismatch");
    std::vector<cplx> tmp(in.begin(), in.end());
    return forward(tmp);
}

double bin_frequency(std::size_t k, std::size_t n) {
    const double w = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
    return (2 * k <= n) ? w : w - 2.0 * M_PI;
}

std::vector<double> grid_frequencies(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = bin_frequency(k, n);
    return w;
}

}  // namespace elan::fft
