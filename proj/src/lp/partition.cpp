#include "partition.hpp"

#include "spectral/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace bo::lp {

double glue(double x)
{
    if (x <= 0.0)
        return 0.0;
    if (x >= 1.0)
        return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

double profile(double r)
{
    if (r <= 1.0)
        return 1.0;
    if (r >= 2.0)
        return 0.0;
    return glue(2.0 - r);
}

Partition::Partition(const Grid& g, double base_scale) : g_(g), base_(base_scale)
{
    if (!(base_ > 0.0))
        throw std::invalid_argument("base_scale must be positive");
}

const std::vector<double>& Partition::cutoff(int j) const
{
    auto it = cut_.find(j);
    if (it != cut_.end())
        return it->second;
    std::vector<double> t(g_.n);
    const double inv = std::ldexp(1.0, -j);  // 2^-j
    for (std::size_t m = 0; m < g_.n; ++m) {
        const double nn = base_ * std::abs(g_.signed_mode(m));
        t[m] = profile(nn * inv);
    }
    return cut_.emplace(j, std::move(t)).first->second;
}

const std::vector<double>& Partition::shell(int j) const
{
    auto it = shell_.find(j);
    if (it != shell_.end())
        return it->second;
    if (j < -1 || j > jmax())
        throw std::out_of_range("shell index");
    std::vector<double> t(g_.n);
    if (j == -1) {
        t = cutoff(0);
    } else if (j == jmax()) {
        const auto& c = cutoff(j);
        for (std::size_t m = 0; m < g_.n; ++m)
            t[m] = 1.0 - c[m];
    } else {
        const auto& hi = cutoff(j + 1);
        const auto& lo = cutoff(j);
        for (std::size_t m = 0; m < g_.n; ++m)
            t[m] = hi[m] - lo[m];
    }
    return shell_.emplace(j, std::move(t)).first->second;
}

Field Partition::cut(int j, const Field& u) const
{
    return spectral::apply_mult(cutoff(j), u);
}

CField Partition::cut(int j, const CField& u) const
{
    return spectral::apply_mult(cutoff(j), u);
}

Field Partition::delta(int j, const Field& u) const
{
    return spectral::apply_mult(shell(j), u);
}

CField Partition::delta(int j, const CField& u) const
{
    return spectral::apply_mult(shell(j), u);
}

namespace {
template <class F>
CField delta_plus_impl(const Partition& P, const Grid& g, int j, const F& u)
{
    const auto& sh = P.shell(j);
    auto h = u.spectrum();
    for (std::size_t m = 0; m < g.n; ++m) {
        const int s = g.signed_mode(m);
        h[m] = (s > 0 && m != g.n / 2) ? h[m] * sh[m] : cplx(0);
    }
    return CField::of_spectrum(g, std::move(h));
}
} // namespace

CField Partition::delta_plus(int j, const Field& u) const
{
    return delta_plus_impl(*this, g_, j, u);
}

CField Partition::delta_plus(int j, const CField& u) const
{
    return delta_plus_impl(*this, g_, j, u);
}

std::vector<double> Partition::band_table(int j0, int j1) const
{
    std::vector<double> t(g_.n, 0.0);
    if (j1 < j0 || j1 < -1 || j0 > jmax())
        return t;
    j0 = std::max(j0, -1);
    j1 = std::min(j1, jmax());
    // sum_{m=j0..j1} shell(m) = upper - lower with
    //   upper = 1 if j1 == jmax else cutoff(j1+1)
    //   lower = 0 if j0 == -1   else cutoff(j0)
    if (j1 == jmax()) {
        for (auto& x : t)
            x = 1.0;
    } else {
        t = cutoff(j1 + 1);
    }
    if (j0 > -1) {
        const auto& lo = cutoff(j0);
        for (std::size_t m = 0; m < g_.n; ++m)
            t[m] -= lo[m];
    }
    return t;
}

Field Partition::band(int j0, int j1, const Field& u) const
{
    return spectral::apply_mult(band_table(j0, j1), u);
}

} // namespace bo::lp
