#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kernels/kernels.hpp"

#include <cmath>
#include <random>
#include <vector>

using bo::kernels::cplx;
using bo::kernels::Ops;

namespace {

std::mt19937_64 rng(20260814ull);

std::vector<double> rand_real(std::size_t n)
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v)
        x = d(rng);
    return v;
}

std::vector<cplx> rand_cplx(std::size_t n)
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& x : v)
        x = cplx(d(rng), d(rng));
    return v;
}

bool bit_equal(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].real() != b[i].real() || a[i].imag() != b[i].imag())
            return false;
    return true;
}

// reductions: allow tiny reassociation error
void check_close(double a, double b, double scale)
{
    CHECK(std::fabs(a - b) <= 1e-13 * scale);
}

const std::size_t sizes[] = {1, 2, 3, 4, 5, 7, 8, 16, 63, 64, 65, 257};

} // namespace

TEST_CASE("scalar kernels: reference semantics")
{
    const auto& k = bo::kernels::scalar_ops();
    std::vector<cplx> a = {{1, 2}, {3, -4}};
    std::vector<cplx> b = {{5, 6}, {-7, 8}};
    k.cmul(a.data(), b.data(), 2);
    CHECK(a[0] == cplx(1 * 5 - 2 * 6, 1 * 6 + 2 * 5));
    CHECK(a[1] == cplx(3 * -7 - (-4) * 8, 3 * 8 + (-4) * -7));

    std::vector<cplx> c = {{1, 2}, {3, 4}};
    std::vector<double> m = {2, -3};
    k.rmul(c.data(), m.data(), 2);
    CHECK(c[0] == cplx(2, 4));
    CHECK(c[1] == cplx(-9, -12));

    std::vector<double> x = {1, -2, 3};
    CHECK(k.sumsq_real(x.data(), 3) == doctest::Approx(14.0));
    CHECK(k.max_abs_real(x.data(), 3) == 3.0);

    std::vector<cplx> u = {{3, 4}, {0, 1}};
    CHECK(k.max_abs_cplx(u.data(), 2) == doctest::Approx(5.0));
    CHECK(k.sumsq_cplx(u.data(), 2) == doctest::Approx(26.0));

    std::vector<double> w = {2, 10};
    CHECK(k.wsumsq_cplx(w.data(), u.data(), 2) == doctest::Approx(2 * 25 + 10 * 1));

    // cdot = sum conj(a_i) b_i
    std::vector<cplx> p = {{1, 1}};
    std::vector<cplx> q = {{2, 3}};
    const cplx d = k.cdot(p.data(), q.data(), 1);
    CHECK(d.real() == doctest::Approx(2 + 3));
    CHECK(d.imag() == doctest::Approx(3 - 2));
}

TEST_CASE("dispatch: ops() returns a usable table")
{
    const auto& k = bo::kernels::ops();
    CHECK(k.name != nullptr);
    std::vector<double> x = {1.0, 2.0};
    CHECK(k.sumsq_real(x.data(), 2) == doctest::Approx(5.0));
}

TEST_CASE("avx2 element-wise kernels match scalar bitwise")
{
    const Ops* v = bo::kernels::avx2_ops();
    if (!v) {
        MESSAGE("avx2 kernels not built on this platform; skipping");
        return;
    }
    const auto& s = bo::kernels::scalar_ops();

    for (std::size_t n : sizes) {
        auto a0 = rand_cplx(n);
        auto b = rand_cplx(n);
        auto a1 = a0, a2 = a0;
        s.cmul(a1.data(), b.data(), n);
        v->cmul(a2.data(), b.data(), n);
        CHECK(bit_equal(a1, a2));

        auto m = rand_real(n);
        a1 = a0;
        a2 = a0;
        s.rmul(a1.data(), m.data(), n);
        v->rmul(a2.data(), m.data(), n);
        CHECK(bit_equal(a1, a2));

        auto r1 = rand_real(n);
        auto r2 = r1;
        auto mm = rand_real(n);
        s.rmul_real(r1.data(), mm.data(), n);
        v->rmul_real(r2.data(), mm.data(), n);
        CHECK(r1 == r2);

        const double al = 0.7306;
        auto y1 = rand_cplx(n);
        auto y2 = y1;
        s.caxpy(al, b.data(), y1.data(), n);
        v->caxpy(al, b.data(), y2.data(), n);
        CHECK(bit_equal(y1, y2));

        auto z1 = rand_real(n);
        auto z2 = z1;
        s.axpy(al, mm.data(), z1.data(), n);
        v->axpy(al, mm.data(), z2.data(), n);
        CHECK(z1 == z2);
    }
}

TEST_CASE("avx2 reductions match scalar within ulp tolerance")
{
    const Ops* v = bo::kernels::avx2_ops();
    if (!v) {
        MESSAGE("avx2 kernels not built on this platform; skipping");
        return;
    }
    const auto& s = bo::kernels::scalar_ops();

    for (std::size_t n : sizes) {
        auto x = rand_real(n);
        check_close(s.sumsq_real(x.data(), n), v->sumsq_real(x.data(), n),
                    static_cast<double>(n));

        auto c = rand_cplx(n);
        check_close(s.sumsq_cplx(c.data(), n), v->sumsq_cplx(c.data(), n),
                    static_cast<double>(n));

        auto w = rand_real(n);
        check_close(s.wsumsq_cplx(w.data(), c.data(), n),
                    v->wsumsq_cplx(w.data(), c.data(), n), static_cast<double>(n));

        CHECK(s.max_abs_real(x.data(), n) == v->max_abs_real(x.data(), n));
        CHECK(s.max_abs_cplx(c.data(), n) ==
              doctest::Approx(v->max_abs_cplx(c.data(), n)).epsilon(1e-14));

        auto d = rand_cplx(n);
        const cplx ds = s.cdot(c.data(), d.data(), n);
        const cplx dv = v->cdot(c.data(), d.data(), n);
        check_close(ds.real(), dv.real(), static_cast<double>(n));
        check_close(ds.imag(), dv.imag(), static_cast<double>(n));
    }
}
