#ifndef BO_KERNELS_HPP
#define BO_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <string>

namespace bo::kernels {

using cplx = std::complex<double>;

// Flat table of the arithmetic inner loops used by the spectral layers.
// Element-wise ops are required to produce bit-identical results across
// implementations (no FMA contraction inside them); reductions may differ
// in summation order and are compared with a small ulp tolerance.
struct Ops {
    // a[i] *= b[i]
    void (*cmul)(cplx* a, const cplx* b, std::size_t n);
    // a[i] *= m[i]  (real multiplier on complex data)
    void (*rmul)(cplx* a, const double* m, std::size_t n);
    // a[i] *= b[i]  (real)
    void (*rmul_real)(double* a, const double* b, std::size_t n);
    // y[i] += alpha * x[i]  (complex data, real scalar)
    void (*caxpy)(double alpha, const cplx* x, cplx* y, std::size_t n);
    // y[i] += alpha * x[i]  (real)
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // sum x[i]^2
    double (*sumsq_real)(const double* x, std::size_t n);
    // sum |x[i]|^2
    double (*sumsq_cplx)(const cplx* x, std::size_t n);
    // sum w[i] * |x[i]|^2
    double (*wsumsq_cplx)(const double* w, const cplx* x, std::size_t n);
    // max |x[i]|
    double (*max_abs_real)(const double* x, std::size_t n);
    // max |x[i]|  (complex modulus)
    double (*max_abs_cplx)(const cplx* x, std::size_t n);
    // sum conj(a[i]) * b[i]
    cplx (*cdot)(const cplx* a, const cplx* b, std::size_t n);

    const char* name;
};

// Active implementation, chosen once per process: AVX2 when the CPU has it,
// scalar otherwise. BO_KERNELS=scalar|avx2 overrides.
const Ops& ops();

const Ops& scalar_ops();
// Null when the binary was built without AVX2 support.
const Ops* avx2_ops();

} // namespace bo::kernels

#endif
