#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <vector>

namespace bo::spectral {

namespace {
fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
} // namespace

Fft::Fft(std::size_t n) : n_(n)
{
    std::vector<cplx> a(n), b(n);
    fwd_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(a.data()), as_fftw(b.data()),
                            FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    bwd_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(a.data()), as_fftw(b.data()),
                            FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Fft::~Fft()
{
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void Fft::forward(const cplx* in, cplx* out) const
{
    fftw_execute_dft(static_cast<fftw_plan>(fwd_), as_fftw(const_cast<cplx*>(in)),
                     as_fftw(out));
}

void Fft::backward(const cplx* in, cplx* out) const
{
    fftw_execute_dft(static_cast<fftw_plan>(bwd_), as_fftw(const_cast<cplx*>(in)),
                     as_fftw(out));
}

const Fft& Fft::get(std::size_t n)
{
    static std::map<std::size_t, std::unique_ptr<Fft>> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::unique_ptr<Fft>(new Fft(n))).first;
    return *it->second;
}

} // namespace bo::spectral
