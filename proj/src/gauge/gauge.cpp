#include "gauge/gauge.hpp"

#include "spectral/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace bo::gauge {

using spectral::apply_mult;
using spectral::conj;
using spectral::dx;
using spectral::hilbert;
using spectral::mult;
using spectral::pplus;
using spectral::real_part;

namespace {

constexpr cplx I{0.0, 1.0};

double inner(const Field& a, const Field& b)
{
    const auto& av = a.values();
    const auto& bv = b.values();
    double s = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i) s += av[i] * bv[i];
    return s * a.grid().dx();
}

double uniform_dt(const std::vector<double>& times)
{
    if (times.size() < 2)
        throw std::invalid_argument("renorm_residual: need at least two frames");
    const double dt = times[1] - times[0];
    for (std::size_t i = 1; i + 1 < times.size(); ++i)
        if (std::fabs(times[i + 1] - times[i] - dt) > 1e-9 * std::fabs(dt))
            throw std::invalid_argument("renorm_residual: frame times not uniform");
    return dt;
}

} // namespace

Field averaging_bump(const Grid& g)
{
    const double L = g.length;
    const double sigma = L / 16.0;
    Field psi = Field::sample(g, [&](double x) {
        const double d = x - 0.5 * L;
        return std::exp(-d * d / (2.0 * sigma * sigma));
    });
    psi *= 1.0 / psi.integral();
    return psi;
}

std::vector<double> fejer_table(const Grid& g, int level)
{
    const double m_top = std::ldexp(1.0, std::max(0, level));
    std::vector<double> t(g.n);
    for (std::size_t m = 0; m < g.n; ++m) {
        const double s = std::abs(static_cast<double>(g.signed_mode(m)));
        t[m] = std::max(0.0, 1.0 - s / m_top);
    }
    return t;
}

CField fejer_smooth(int level, const CField& f)
{
    return apply_mult(fejer_table(f.grid(), level), f);
}

Field fejer_smooth(int level, const Field& f)
{
    return apply_mult(fejer_table(f.grid(), level), f);
}

AntiDerivative antiderivative(const Trajectory& tr)
{
    if (tr.frames.empty())
        throw std::invalid_argument("antiderivative: empty trajectory");
    const Grid& g = tr.g;
    const std::size_t nf = tr.frames.size();

    AntiDerivative out;
    out.times = tr.times;
    out.psi = averaging_bump(g);
    const Field hpsix = hilbert(dx(out.psi));

    std::vector<Field> u(nf);
    std::vector<double> rate(nf);
    for (std::size_t i = 0; i < nf; ++i) {
        u[i] = Field::of_values(g, tr.frames[i]);
        if (std::fabs(u[i].mean()) > 1e-12)
            throw std::invalid_argument("antiderivative: frame " + std::to_string(i) +
                                        " has mean " + std::to_string(u[i].mean()) +
                                        " (must be zero to 1e-12)");
        rate[i] = -inner(hpsix, u[i]) - 0.5 * inner(out.psi, mult(u[i], u[i]));
    }

    out.correction.assign(nf, 0.0);
    for (std::size_t i = 1; i < nf; ++i)
        out.correction[i] = out.correction[i - 1] +
                            0.5 * (tr.times[i] - tr.times[i - 1]) * (rate[i - 1] + rate[i]);

    out.U.reserve(nf);
    for (std::size_t i = 0; i < nf; ++i) {
        std::vector<cplx> hat = u[i].spectrum();
        hat[0] = 0.0;
        for (std::size_t m = 1; m < g.n; ++m) {
            if (2 * m == g.n) {
                hat[m] = 0.0;
                continue;
            }
            hat[m] /= cplx(0.0, g.xi(m));
        }
        Field w0 = Field::of_spectrum(g, std::move(hat));
        const double shift = inner(out.psi, w0) - out.correction[i];
        for (double& v : w0.values_mut()) v -= shift;
        out.U.push_back(std::move(w0));
    }
    return out;
}

CField gauge_factor(const Field& U, double sign)
{
    const auto& v = U.values();
    std::vector<cplx> f(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double th = 0.5 * sign * v[i];
        f[i] = cplx(std::cos(th), std::sin(th));
    }
    return CField::of_values(U.grid(), std::move(f));
}

CField GaugedPair::wplus(std::size_t frame) const
{
    CField acc = low.at(frame);
    for (const CField& wj : w_shell.at(frame)) acc += wj;
    return acc;
}

Field GaugedPair::w(std::size_t frame) const
{
    Field r = real_part(wplus(frame));
    r *= 2.0;
    return r;
}

GaugedPair gauge_forward(const Trajectory& tr, double sign)
{
    GaugedPair gp;
    gp.u = tr;
    gp.anti = antiderivative(tr);
    gp.sign = sign;

    const lp::Partition P(tr.g);
    const int jm = P.jmax();
    const std::size_t nf = tr.frames.size();
    gp.low.reserve(nf);
    gp.w_shell.reserve(nf);
    for (std::size_t i = 0; i < nf; ++i) {
        const Field u = Field::of_values(tr.g, tr.frames[i]);
        const CField f = gauge_factor(gp.anti.U[i], sign);
        gp.low.push_back(pplus(P.cut(0, u)));
        std::vector<CField> row;
        row.reserve(static_cast<std::size_t>(jm) + 1);
        for (int j = 0; j <= jm; ++j)
            row.push_back(mult(fejer_smooth(j, f), P.delta_plus(j, u)));
        gp.w_shell.push_back(std::move(row));
    }
    return gp;
}

InverseReport gauge_inverse(const GaugedPair& gp, double tol, int max_iter)
{
    const Grid& g = gp.u.g;
    const lp::Partition P(g);
    const int jm = P.jmax();
    const std::size_t nf = gp.w_shell.size();
    if (nf == 0) throw std::invalid_argument("gauge_inverse: empty pair");

    InverseReport rep;
    rep.traj.g = g;
    rep.traj.times = gp.u.times;
    rep.traj.frames.resize(nf);
    for (std::size_t i = 0; i < nf; ++i) {
        Field seed = gp.w(i);
        auto& vals = seed.values_mut();
        double m = 0.0;
        for (double v : vals) m += v;
        m /= static_cast<double>(vals.size());
        for (double& v : vals) v -= m;
        rep.traj.frames[i] = vals;
    }

    const double u0 = Field::of_values(g, rep.traj.frames[0]).l2();
    if (u0 > 0.5 + 1e-9)
        throw std::invalid_argument("gauge_inverse: ||u(0)||_2 = " + std::to_string(u0) +
                                    " exceeds the 0.5 contraction budget");

    double prev = std::numeric_limits<double>::infinity();
    int rising = 0;
    for (int it = 1; it <= max_iter; ++it) {
        const AntiDerivative anti = antiderivative(rep.traj);
        double worst = 0.0;
        for (std::size_t i = 0; i < nf; ++i) {
            const Field u = Field::of_values(g, rep.traj.frames[i]);
            const CField f = gauge_factor(anti.U[i], gp.sign);
            const CField finv = conj(f);  // |f| = 1, so the inverse is the conjugate

            CField corr = gp.low[i] - pplus(P.cut(0, u));
            for (int j = 0; j <= jm; ++j) {
                const CField d = gp.w_shell[i][j] - mult(fejer_smooth(j, f), P.delta_plus(j, u));
                corr += mult(fejer_smooth(j - 2, finv), d);
            }
            Field step = real_part(corr);
            step *= 2.0;
            worst = std::max(worst, step.l2());

            Field unew = u + step;
            auto& vals = unew.values_mut();
            double m = 0.0;
            for (double v : vals) m += v;
            m /= static_cast<double>(vals.size());
            for (double& v : vals) v -= m;
            rep.traj.frames[i] = vals;
        }
        rep.iterations = it;
        rep.final_delta = worst;
        if (worst < tol) return rep;
        if (worst > prev * 1.02) {
            if (++rising >= 3)
                throw std::runtime_error("gauge_inverse: defect iteration diverging at ||u(0)||_2 = " +
                                         std::to_string(u0));
        } else {
            rising = 0;
        }
        prev = worst;
    }
    throw std::runtime_error("gauge_inverse: no convergence after " + std::to_string(max_iter) +
                             " sweeps (last delta " + std::to_string(rep.final_delta) + ")");
}

CField Paralinearization::sum() const
{
    return transport + commutator + lowhigh + highhigh;
}

Paralinearization paralinearize(const lp::Partition& P, const Field& u, int j)
{
    Paralinearization out;
    const CField dxuj = dx(P.delta_plus(j, u));
    const Field uprec = P.cut(j - 3, u);
    const Field util = P.band(j - 3, j + 3, u);
    const Field dxutil = dx(util);

    out.transport = cplx(2.0) * mult(uprec, dxuj);
    out.commutator =
        cplx(2.0) * (P.delta_plus(j, mult(uprec, dxutil)) - mult(uprec, P.delta_plus(j, dxutil)));
    out.lowhigh = cplx(2.0) * P.delta_plus(j, mult(dx(uprec), util));
    const Field rem = u - uprec;
    out.highhigh = dx(P.delta_plus(j, mult(rem, rem)));
    return out;
}

CField shell_forcing(const lp::Partition& P, const Field& u, int j)
{
    const Paralinearization p = paralinearize(P, u, j);
    return cplx(-0.5) * (p.commutator + p.lowhigh + p.highhigh);
}

ResidualReport renorm_residual(const GaugedPair& gp, int j)
{
    const Grid& g = gp.u.g;
    const lp::Partition P(g);
    if (j < 0 || j > P.jmax())
        throw std::invalid_argument("renorm_residual: shell index out of range");
    const std::size_t nf = gp.w_shell.size();
    if (nf < 3)
        throw std::invalid_argument("renorm_residual: need at least three frames");

    ResidualReport rep;
    rep.j = j;
    rep.dt = uniform_dt(gp.u.times);
    const cplx c{0.0, 0.5 * gp.sign};

    for (std::size_t i = 1; i + 1 < nf; ++i) {
        const Field u = Field::of_values(g, gp.u.frames[i]);
        const CField f = gauge_factor(gp.anti.U[i], gp.sign);
        const CField sf = fejer_smooth(j, f);

        const CField uj = P.delta_plus(j, u);
        const CField dxuj = dx(uj);
        const CField fj = shell_forcing(P, u, j);

        const Field ux = dx(u);
        const Field usq = mult(u, u);
        Field ut = -1.0 * hilbert(ux);
        ut -= 0.5 * usq;

        // d_t F - i d_x^2 F for F = e^{cU}:  c U_t F - i (c u_x + c^2 u^2) F
        const CField gf = c * mult(ut, f) + (-I * c) * mult(ux, f) + (-I * c * c) * mult(usq, f);
        const CField bracket =
            cplx(-1.0) * mult(P.cut(j - 3, u), sf) + (-2.0 * I * c) * fejer_smooth(j, mult(u, f));

        const CField rhs = mult(sf, fj) + mult(fejer_smooth(j, gf), uj) + mult(bracket, dxuj);
        const CField lhs = cplx(0.5 / rep.dt) * (gp.w_shell[i + 1][j] - gp.w_shell[i - 1][j]) -
                           I * dx(gp.w_shell[i][j], 2);

        const double ln = lhs.l2(), rn = rhs.l2();
        const double den = std::max(ln, rn);
        const double r = den == 0.0 ? 0.0 : (lhs - rhs).l2() / den;
        if (r >= rep.residual) {
            rep.residual = r;
            rep.lhs_norm = ln;
            rep.rhs_norm = rn;
            rep.worst_frame = i;
        }
    }
    return rep;
}

} // namespace bo::gauge
