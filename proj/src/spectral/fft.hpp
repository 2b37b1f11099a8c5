#pragma once

#include <complex>
#include <cstddef>

namespace bo::spectral {

using cplx = std::complex<double>;

// Cached unnormalized complex DFT plans, one pair per size. Plans are created
// with FFTW_ESTIMATE | FFTW_UNALIGNED so they are deterministic and can be
// executed on any buffers. in and out must be distinct arrays.
class Fft {
public:
    static const Fft& get(std::size_t n);

    void forward(const cplx* in, cplx* out) const;   // sum e^{-2pi i mk/n}
    void backward(const cplx* in, cplx* out) const;  // sum e^{+2pi i mk/n}

    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;
    ~Fft();

private:
    explicit Fft(std::size_t n);
    std::size_t n_;
    void* fwd_;
    void* bwd_;
};

} // namespace bo::spectral
