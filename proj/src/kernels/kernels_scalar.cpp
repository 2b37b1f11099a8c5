#include "kernels.hpp"

#include <cmath>

// Reference kernels. Deliberately plain loops: these define the semantics
// the vectorized variants are tested against.

namespace bo::kernels {
namespace {

void cmul(cplx* a, const cplx* b, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        a[i] = cplx(ar * br - ai * bi, ar * bi + ai * br);
    }
}

void rmul(cplx* a, const double* m, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        a[i] = cplx(a[i].real() * m[i], a[i].imag() * m[i]);
}

void rmul_real(double* a, const double* b, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        a[i] *= b[i];
}

void caxpy(double alpha, const cplx* x, cplx* y, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        y[i] = cplx(y[i].real() + alpha * x[i].real(),
                    y[i].imag() + alpha * x[i].imag());
}

void axpy(double alpha, const double* x, double* y, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        y[i] += alpha * x[i];
}

double sumsq_real(const double* x, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += x[i] * x[i];
    return s;
}

double sumsq_cplx(const cplx* x, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

double wsumsq_cplx(const double* w, const cplx* x, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += w[i] * (x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
    return s;
}

double max_abs_real(const double* x, std::size_t n)
{
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::fabs(x[i]);
        if (a > m)
            m = a;
    }
    return m;
}

double max_abs_cplx(const cplx* x, std::size_t n)
{
    double m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a2 = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
        if (a2 > m2)
            m2 = a2;
    }
    return std::sqrt(m2);
}

cplx cdot(const cplx* a, const cplx* b, std::size_t n)
{
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

} // namespace

const Ops& scalar_ops()
{
    static const Ops table = {cmul,       rmul,       rmul_real,    caxpy,
                              axpy,       sumsq_real, sumsq_cplx,   wsumsq_cplx,
                              max_abs_real, max_abs_cplx, cdot,     "scalar"};
    return table;
}

} // namespace bo::kernels
