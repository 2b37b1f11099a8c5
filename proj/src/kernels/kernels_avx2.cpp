#include "kernels.hpp"

#include <cmath>
#include <immintrin.h>

// AVX2 variants. Element-wise kernels use mul/add/sub only (no FMA) so they
// round exactly like the scalar reference; FMA is confined to reductions,
// whose lane-partial sums are allowed to differ from scalar by a few ulp.

namespace bo::kernels {
namespace {

inline __m256d cmul4(__m256d a, __m256d b)
{
    // two complex numbers per vector, interleaved re/im
    const __m256d bre = _mm256_movedup_pd(b);          // [br0 br0 br1 br1]
    const __m256d bim = _mm256_permute_pd(b, 0xF);     // [bi0 bi0 bi1 bi1]
    const __m256d t1  = _mm256_mul_pd(a, bre);         // [ar*br ai*br ..]
    const __m256d t2  = _mm256_mul_pd(a, bim);         // [ar*bi ai*bi ..]
    const __m256d t2s = _mm256_permute_pd(t2, 0x5);    // [ai*bi ar*bi ..]
    return _mm256_addsub_pd(t1, t2s);                  // [ar*br-ai*bi ai*br+ar*bi ..]
}

void cmul(cplx* a, const cplx* b, std::size_t n)
{
    auto* pa = reinterpret_cast<double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(pa + 2 * i, cmul4(va, vb));
    }
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        a[i] = cplx(ar * br - ai * bi, ar * bi + ai * br);
    }
}

void rmul(cplx* a, const double* m, std::size_t n)
{
    auto* pa = reinterpret_cast<double*>(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vm = _mm256_loadu_pd(m + i);
        const __m256d lo = _mm256_permute4x64_pd(vm, 0x50); // [m0 m0 m1 m1]
        const __m256d hi = _mm256_permute4x64_pd(vm, 0xFA); // [m2 m2 m3 m3]
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        _mm256_storeu_pd(pa + 2 * i, _mm256_mul_pd(va, lo));
        va = _mm256_loadu_pd(pa + 2 * i + 4);
        _mm256_storeu_pd(pa + 2 * i + 4, _mm256_mul_pd(va, hi));
    }
    for (; i < n; ++i)
        a[i] = cplx(a[i].real() * m[i], a[i].imag() * m[i]);
}

void rmul_real(double* a, const double* b, std::size_t n)
{
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(a + i, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                              _mm256_loadu_pd(b + i)));
    for (; i < n; ++i)
        a[i] *= b[i];
}

void caxpy(double alpha, const cplx* x, cplx* y, std::size_t n)
{
    const __m256d va = _mm256_set1_pd(alpha);
    auto* py = reinterpret_cast<double*>(y);
    const auto* px = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(px + 2 * i);
        const __m256d vy = _mm256_loadu_pd(py + 2 * i);
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
    }
    for (; i < n; ++i)
        y[i] = cplx(y[i].real() + alpha * x[i].real(),
                    y[i].imag() + alpha * x[i].imag());
}

void axpy(double alpha, const double* x, double* y, std::size_t n)
{
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i,
                         _mm256_add_pd(vy, _mm256_mul_pd(va, _mm256_loadu_pd(x + i))));
    }
    for (; i < n; ++i)
        y[i] += alpha * x[i];
}

inline double hsum(__m256d v)
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s  = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sumsq_real(const double* x, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i)
        s += x[i] * x[i];
    return s;
}

double sumsq_cplx(const cplx* x, std::size_t n)
{
    return sumsq_real(reinterpret_cast<const double*>(x), 2 * n);
}

double wsumsq_cplx(const double* w, const cplx* x, std::size_t n)
{
    const auto* px = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(px + 2 * i);
        const __m128d w2 = _mm_loadu_pd(w + i);
        // [w0 w0 w1 w1]
        const __m256d vw = _mm256_permute4x64_pd(
            _mm256_castpd128_pd256(w2), 0x50);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(v, v), vw, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i)
        s += w[i] * (x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
    return s;
}

double max_abs_real(const double* x, std::size_t n)
{
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d vmax = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        vmax = _mm256_max_pd(vmax, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
    const __m128d lo = _mm256_castpd256_pd128(vmax);
    const __m128d hi = _mm256_extractf128_pd(vmax, 1);
    const __m128d m2 = _mm_max_pd(lo, hi);
    double m = _mm_cvtsd_f64(_mm_max_sd(m2, _mm_unpackhi_pd(m2, m2)));
    for (; i < n; ++i) {
        const double a = std::fabs(x[i]);
        if (a > m)
            m = a;
    }
    return m;
}

double max_abs_cplx(const cplx* x, std::size_t n)
{
    const auto* px = reinterpret_cast<const double*>(x);
    __m256d vmax = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v  = _mm256_loadu_pd(px + 2 * i);
        const __m256d sq = _mm256_mul_pd(v, v);              // [r0² i0² r1² i1²]
        const __m256d sw = _mm256_permute_pd(sq, 0x5);       // [i0² r0² i1² r1²]
        vmax = _mm256_max_pd(vmax, _mm256_add_pd(sq, sw));   // moduli², duplicated
    }
    const __m128d lo = _mm256_castpd256_pd128(vmax);
    const __m128d hi = _mm256_extractf128_pd(vmax, 1);
    const __m128d m2 = _mm_max_pd(lo, hi);
    double m = _mm_cvtsd_f64(_mm_max_sd(m2, _mm_unpackhi_pd(m2, m2)));
    for (; i < n; ++i) {
        const double a2 = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
        if (a2 > m)
            m = a2;
    }
    return std::sqrt(m);
}

cplx cdot(const cplx* a, const cplx* b, std::size_t n)
{
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    __m256d accre = _mm256_setzero_pd();
    __m256d accim = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        const __m256d vbs = _mm256_permute_pd(vb, 0x5);      // [bi0 br0 bi1 br1]
        accre = _mm256_fmadd_pd(va, vb, accre);              // ar*br + ai*bi
        accim = _mm256_fmadd_pd(va, vbs, accim);             // ar*bi , ai*br
    }
    // accre lanes hold ar*br and ai*bi contributions; both go into Re.
    double re = hsum(accre);
    // accim even lanes: ar*bi (+), odd lanes: ai*br (−)
    alignas(32) double tmp[4];
    _mm256_store_pd(tmp, accim);
    double im = tmp[0] - tmp[1] + tmp[2] - tmp[3];
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

} // namespace

const Ops* avx2_ops()
{
    static const Ops table = {cmul,       rmul,       rmul_real,    caxpy,
                              axpy,       sumsq_real, sumsq_cplx,   wsumsq_cplx,
                              max_abs_real, max_abs_cplx, cdot,     "avx2"};
    return &table;
}

} // namespace bo::kernels
