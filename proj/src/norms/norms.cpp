#include "norms.hpp"

#include "spectral/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bo::norms {

namespace {

using spectral::cplx;
using spectral::Grid;

double pw(double x, double p)
{
    if (p == 2.0)
        return x * x;
    if (p == 4.0) {
        const double s = x * x;
        return s * s;
    }
    if (p == 1.0)
        return std::fabs(x);
    return std::pow(std::fabs(x), p);
}

void check_exponent(double p)
{
    if (!(p >= 1.0))  // inf passes: inf >= 1
        throw std::invalid_argument("Lebesgue exponent must be >= 1");
}

// l^q accumulation helper
struct Lq {
    double q;
    double acc = 0.0;
    void add(double term)
    {
        if (std::isfinite(q))
            acc += pw(term, q);
        else
            acc = std::max(acc, term);
    }
    double value() const { return std::isfinite(q) ? std::pow(acc, 1.0 / q) : acc; }
};

// per-frame spectra of a trajectory
std::vector<std::vector<cplx>> frame_spectra(const Trajectory& tr)
{
    const Grid& g = tr.g;
    const auto& fft = spectral::Fft::get(g.n);
    std::vector<std::vector<cplx>> out(tr.frames.size());
    std::vector<cplx> in(g.n);
    for (std::size_t i = 0; i < tr.frames.size(); ++i) {
        if (tr.frames[i].size() != g.n)
            throw std::invalid_argument("frame size mismatch");
        for (std::size_t m = 0; m < g.n; ++m)
            in[m] = tr.frames[i][m];
        out[i].resize(g.n);
        fft.forward(in.data(), out[i].data());
        for (auto& z : out[i])
            z *= g.dx();
    }
    return out;
}

// magnitude block |Delta_j u| from cached spectra
std::vector<std::vector<double>> shell_block(const Grid& g,
                                             const std::vector<std::vector<cplx>>& spectra,
                                             const std::vector<double>& weight)
{
    const auto& fft = spectral::Fft::get(g.n);
    std::vector<std::vector<double>> a(spectra.size(), std::vector<double>(g.n));
    std::vector<cplx> h(g.n), v(g.n);
    for (std::size_t i = 0; i < spectra.size(); ++i) {
        for (std::size_t m = 0; m < g.n; ++m)
            h[m] = spectra[i][m] * weight[m];
        fft.backward(h.data(), v.data());
        for (std::size_t m = 0; m < g.n; ++m)
            a[i][m] = std::fabs(v[m].real()) / g.length;
    }
    return a;
}

} // namespace

double frame_dt(const Trajectory& tr)
{
    if (tr.times.size() < 2)
        throw std::invalid_argument("trajectory needs at least two frames");
    const double dt = tr.times[1] - tr.times[0];
    if (!(dt > 0.0))
        throw std::invalid_argument("frame times must increase");
    for (std::size_t i = 1; i + 1 < tr.times.size(); ++i)
        if (std::fabs(tr.times[i + 1] - tr.times[i] - dt) > 1e-9 * dt)
            throw std::invalid_argument("frame times must be uniform");
    return dt;
}

double lp_grid(const std::vector<double>& v, double p, double dx)
{
    check_exponent(p);
    if (!std::isfinite(p)) {
        double m = 0.0;
        for (double x : v)
            m = std::max(m, std::fabs(x));
        return m;
    }
    double s = 0.0;
    for (double x : v)
        s += pw(x, p);
    return std::pow(s * dx, 1.0 / p);
}

double hs_norm(const Field& f, double sigma)
{
    const Grid& g = f.grid();
    const auto& h = f.spectrum();
    double s = 0.0;
    for (std::size_t m = 0; m < g.n; ++m) {
        const double xi = g.xi(m);
        s += std::pow(1.0 + xi * xi, sigma) * std::norm(h[m]);
    }
    return std::sqrt(s / g.length);
}

double besov(const lp::Partition& P, const Field& f, double s, double p, double q)
{
    check_exponent(p);
    check_exponent(q);
    Lq acc{q};
    for (int j = -1; j <= P.jmax(); ++j) {
        const Field fj = P.delta(j, f);
        acc.add(std::pow(2.0, j * s) * lp_grid(fj.values(), p, f.grid().dx()));
    }
    return acc.value();
}

namespace {

// trapezoid weights: dt * (1/2, 1, ..., 1, 1/2)
double time_quad(const std::vector<double>& a, double rho, double dt)
{
    if (!std::isfinite(rho)) {
        double m = 0.0;
        for (double x : a)
            m = std::max(m, x);
        return m;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double w = (i == 0 || i + 1 == a.size()) ? 0.5 : 1.0;
        s += w * pw(a[i], rho);
    }
    return std::pow(s * dt, 1.0 / rho);
}

} // namespace

double mixed_time_outer(const std::vector<std::vector<double>>& a,
                        double p, double rho, double dx, double dt)
{
    check_exponent(p);
    check_exponent(rho);
    std::vector<double> per_t(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        per_t[i] = lp_grid(a[i], p, dx);
    return time_quad(per_t, rho, dt);
}

double mixed_space_outer(const std::vector<std::vector<double>>& a,
                         double p, double rho, double dx, double dt)
{
    check_exponent(p);
    check_exponent(rho);
    if (a.empty())
        return 0.0;
    const std::size_t n = a.front().size();
    std::vector<double> per_x(n, 0.0);
    if (!std::isfinite(rho)) {
        for (const auto& row : a)
            for (std::size_t m = 0; m < n; ++m)
                per_x[m] = std::max(per_x[m], std::fabs(row[m]));
    } else {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double w = ((i == 0 || i + 1 == a.size()) ? 0.5 : 1.0) * dt;
            for (std::size_t m = 0; m < n; ++m)
                per_x[m] += w * pw(a[i][m], rho);
        }
        for (auto& x : per_x)
            x = std::pow(x, 1.0 / rho);
    }
    return lp_grid(per_x, p, dx);
}

namespace {

template <class Reduce>
double shell_sweep(const Trajectory& tr, const MixedSpec& spec, Reduce&& reduce)
{
    const Grid& g = tr.g;
    const auto spectra = frame_spectra(tr);
    lp::Partition P(g);
    Lq acc{spec.q};
    for (int j = -1; j <= P.jmax(); ++j) {
        const auto block = shell_block(g, spectra, P.shell(j));
        acc.add(std::pow(2.0, j * spec.s) * reduce(block));
    }
    return acc.value();
}

} // namespace

double lb_norm(const Trajectory& tr, const MixedSpec& spec)
{
    const double dt = frame_dt(tr);
    const double dx = tr.g.dx();
    return shell_sweep(tr, spec, [&](const auto& block) {
        return mixed_time_outer(block, spec.p, spec.rho, dx, dt);
    });
}

double bl_norm(const Trajectory& tr, const MixedSpec& spec)
{
    const double dt = frame_dt(tr);
    const double dx = tr.g.dx();
    return shell_sweep(tr, spec, [&](const auto& block) {
        return mixed_space_outer(block, spec.p, spec.rho, dx, dt);
    });
}

double YParts::value() const
{
    return std::max(std::max(ct_besov, st_besov), std::max(smoothing, maximal));
}

YParts y_norm(const Trajectory& tr, double s)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    YParts y;
    y.ct_besov = lb_norm(tr, {s, 2.0, inf, 1.0});
    y.st_besov = lb_norm(tr, {s, inf, 4.0, 1.0});
    y.smoothing = bl_norm(tr, {s + 0.5, inf, 2.0, 1.0});
    y.maximal = bl_norm(tr, {s - 0.25, 4.0, inf, 1.0});
    return y;
}

lp::BlockNorms block_norms(const Trajectory& tr)
{
    const double dt = frame_dt(tr);
    const std::size_t nt = tr.frames.size();
    return lp::ConormalAnalysis(tr.g, nt, dt * static_cast<double>(nt)).analyze(tr.frames);
}

double xsbq_norm(const Trajectory& tr, double s, double b, double q)
{
    return lp::xsbq(block_norms(tr), s, b, q);
}

} // namespace bo::norms
