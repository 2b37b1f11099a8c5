#include "operators.hpp"

#include "kernels/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace bo::spectral {

namespace {
const auto& K = bo::kernels::ops();

} // namespace

std::vector<cplx> multiplier(const Grid& g, const std::function<cplx(double)>& symbol)
{
    std::vector<cplx> m(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        m[i] = symbol(g.xi(i));
    return m;
}

Field apply_mult(const std::vector<double>& mult, const Field& f)
{
    auto h = f.spectrum();
    K.rmul(h.data(), mult.data(), h.size());
    return Field::of_spectrum(f.grid(), std::move(h));
}

CField apply_mult(const std::vector<double>& mult, const CField& f)
{
    auto h = f.spectrum();
    K.rmul(h.data(), mult.data(), h.size());
    return CField::of_spectrum(f.grid(), std::move(h));
}

CField apply_mult(const std::vector<cplx>& mult, const CField& f)
{
    auto h = f.spectrum();
    K.cmul(h.data(), mult.data(), h.size());
    return CField::of_spectrum(f.grid(), std::move(h));
}

namespace {

std::vector<cplx> dx_table(const Grid& g, int order)
{
    std::vector<cplx> m(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        m[i] = std::pow(cplx(0.0, g.xi(i)), order);
    if (order % 2 != 0)
        m[g.n / 2] = 0.0;
    return m;
}

template <class F>
F dx_impl(const F& f, int order)
{
    const auto tab = dx_table(f.grid(), order);
    auto h = f.spectrum();
    K.cmul(h.data(), tab.data(), h.size());
    return F::of_spectrum(f.grid(), std::move(h));
}

} // namespace

Field dx(const Field& f, int order) { return dx_impl(f, order); }
CField dx(const CField& f, int order) { return dx_impl(f, order); }

Field hilbert(const Field& f)
{
    const Grid& g = f.grid();
    auto h = f.spectrum();
    for (std::size_t i = 0; i < g.n; ++i) {
        const int s = g.signed_mode(i);
        if (s == 0 || i == g.n / 2)
            h[i] = 0.0;
        else
            h[i] *= cplx(0.0, s > 0 ? -1.0 : 1.0);
    }
    return Field::of_spectrum(g, std::move(h));
}

Field abs_d(const Field& f, double power)
{
    const Grid& g = f.grid();
    if (power < 0.0) {
        // |D|^p, p<0 divides by |xi|^|p|; the mean mode has no inverse.
        if (std::fabs(f.mean()) > 1e-12 * (1.0 + f.l2()))
            throw std::domain_error("abs_d: negative power requires a mean-zero field");
    }
    std::vector<double> m(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        m[i] = std::pow(std::fabs(g.xi(i)), power);
    if (power < 0.0)
        m[0] = 0.0;  // scrub rounding-level mean
    return apply_mult(m, f);
}

Field dx_absd(const Field& f)
{
    const Grid& g = f.grid();
    auto h = f.spectrum();
    for (std::size_t i = 0; i < g.n; ++i) {
        const double xi = g.xi(i);
        h[i] *= cplx(0.0, xi * std::fabs(xi));
    }
    h[g.n / 2] = 0.0;
    return Field::of_spectrum(g, std::move(h));
}

namespace {
std::vector<cplx> halfline(const Grid& g, const std::vector<cplx>& hat, int sign)
{
    std::vector<cplx> h(g.n, cplx(0));
    for (std::size_t i = 0; i < g.n; ++i) {
        const int s = g.signed_mode(i);
        if (i != g.n / 2 && ((sign > 0 && s > 0) || (sign < 0 && s < 0)))
            h[i] = hat[i];
    }
    return h;
}
} // namespace

CField pplus(const Field& f)
{
    return CField::of_spectrum(f.grid(), halfline(f.grid(), f.spectrum(), +1));
}

CField pplus(const CField& f)
{
    return CField::of_spectrum(f.grid(), halfline(f.grid(), f.spectrum(), +1));
}

CField pminus(const CField& f)
{
    return CField::of_spectrum(f.grid(), halfline(f.grid(), f.spectrum(), -1));
}

std::vector<cplx> free_phase(const Grid& g, double t)
{
    std::vector<cplx> m(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        const double xi = g.xi(i);
        const double th = t * xi * std::fabs(xi);
        m[i] = cplx(std::cos(th), -std::sin(th));
    }
    m[g.n / 2] = 0.0;
    return m;
}

Field evolve_free(const Field& f, double t)
{
    const auto tab = free_phase(f.grid(), t);
    auto h = f.spectrum();
    K.cmul(h.data(), tab.data(), h.size());
    return Field::of_spectrum(f.grid(), std::move(h));
}

CField evolve_free(const CField& f, double t)
{
    const auto tab = free_phase(f.grid(), t);
    auto h = f.spectrum();
    K.cmul(h.data(), tab.data(), h.size());
    return CField::of_spectrum(f.grid(), std::move(h));
}

void dealias_spectrum(const Grid& g, std::vector<cplx>& hat)
{
    const int cut = static_cast<int>(g.n) / 3;
    for (std::size_t i = 0; i < g.n; ++i)
        if (std::abs(g.signed_mode(i)) > cut)
            hat[i] = 0.0;
}

Field dealias(const Field& f)
{
    auto h = f.spectrum();
    dealias_spectrum(f.grid(), h);
    return Field::of_spectrum(f.grid(), std::move(h));
}

Field mult(const Field& a, const Field& b)
{
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument("grid mismatch");
    auto v = a.values();
    K.rmul_real(v.data(), b.values().data(), v.size());
    return Field::of_values(a.grid(), std::move(v));
}

Field mult_dealias(const Field& a, const Field& b)
{
    return dealias(mult(a, b));
}

CField mult(const CField& a, const CField& b)
{
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument("grid mismatch");
    auto v = a.values();
    K.cmul(v.data(), b.values().data(), v.size());
    return CField::of_values(a.grid(), std::move(v));
}

CField mult(const Field& a, const CField& b)
{
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument("grid mismatch");
    auto v = b.values();
    K.rmul(v.data(), a.values().data(), v.size());
    return CField::of_values(a.grid(), std::move(v));
}

} // namespace bo::spectral
