#pragma once

#include <cstddef>
#include <vector>

#include "elan/types.hpp"

namespace elan::fft {

/// Complex DFT of length n, backed by FFTW. One plan per direction is built
/// at construction; execution is thread-safe on caller-owned buffers, so one
/// Dft can serve many threads concurrently.
class Dft {
  public:
    explicit Dft(std::size_t n);
    ~Dft();
    Dft(const Dft&) = delete;
    Dft& operator=(const Dft&) = delete;

    std::size_t size() const { return n_; }

    /// out[k] = sum_t in[t] e^{-2 pi i k t / n}
    void forward(const cplx* in, cplx* out) const;
    /// out[t] = sum_k in[k] e^{+2 pi i k t / n}   (unnormalized)
    void backward(const cplx* in, cplx* out) const;

    std::vector<cplx> forward(const std::vector<cplx>& in) const;
    std::vector<cplx> backward(const std::vector<cplx>& in) const;
    std::vector<cplx> forward_real(const std::vector<double>& in) const;

  private:
    std::size_t n_;
    void* plan_fwd_;
    void* plan_bwd_;
};

/// Angular frequency of DFT bin k for length n, mapped to (-pi, pi].
double bin_frequency(std::size_t k, std::size_t n);

/// All n bin frequencies in DFT order.
std::vector<double> grid_frequencies(std::size_t n);

}  // namespace elan::fft
