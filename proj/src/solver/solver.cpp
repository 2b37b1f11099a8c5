#include "solver.hpp"

#include "kernels/kernels.hpp"
#include "spectral/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace bo::solver {

namespace {
const auto& K = bo::kernels::ops();
}

BoSolver::BoSolver(const Field& u0, double dt)
    : g_(u0.grid()), dt_(dt), hat_(u0.spectrum())
{
    const double xi_max = std::numbers::pi * static_cast<double>(g_.n) / g_.length;
    if (dt_ == 0.0)
        dt_ = 0.5 / xi_max;  // negative dt is legal and runs backwards

    e_full_ = spectral::free_phase(g_, dt_);
    e_half_ = spectral::free_phase(g_, dt_ / 2.0);
    hat_[g_.n / 2] = 0.0;  // propagator and dealias keep it zero afterwards

    dx_half_.resize(g_.n);
    for (std::size_t m = 0; m < g_.n; ++m)
        dx_half_[m] = cplx(0.0, -0.5 * g_.xi(m));
    dx_half_[g_.n / 2] = 0.0;
    const int cut = static_cast<int>(g_.n) / 3;
    for (std::size_t m = 0; m < g_.n; ++m)
        if (std::abs(g_.signed_mode(m)) > cut)
            dx_half_[m] = 0.0;  // fold the 2/3 filter into the symbol
}

std::vector<cplx> BoSolver::nonlin(const std::vector<cplx>& hat) const
{
    const std::size_t n = g_.n;
    const auto& fft = spectral::Fft::get(n);
    std::vector<cplx> tmp(n), w(n);
    fft.backward(hat.data(), tmp.data());
    const double s = 1.0 / g_.length;
    for (std::size_t i = 0; i < n; ++i) {
        const double ur = tmp[i].real() * s;
        w[i] = ur * ur;
    }
    fft.forward(w.data(), tmp.data());
    const double dx = g_.dx();
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] *= dx;
    K.cmul(tmp.data(), dx_half_.data(), n);  // -(i xi / 2) * (u^2)^, filtered
    return tmp;
}

void BoSolver::step()
{
    const std::size_t n = g_.n;
    const double h = dt_;

    auto mulc = [&](const std::vector<cplx>& x, const std::vector<cplx>& tab) {
        auto y = x;
        K.cmul(y.data(), tab.data(), n);
        return y;
    };

    const std::vector<cplx> a = nonlin(hat_);

    std::vector<cplx> u2 = hat_;
    K.caxpy(h / 2.0, a.data(), u2.data(), n);
    u2 = mulc(u2, e_half_);
    const std::vector<cplx> b = nonlin(u2);

    std::vector<cplx> u3 = mulc(hat_, e_half_);
    K.caxpy(h / 2.0, b.data(), u3.data(), n);
    const std::vector<cplx> c = nonlin(u3);

    std::vector<cplx> u4 = mulc(hat_, e_full_);
    {
        std::vector<cplx> ec = mulc(c, e_half_);
        K.caxpy(h, ec.data(), u4.data(), n);
    }
    const std::vector<cplx> d = nonlin(u4);

    std::vector<cplx> out = mulc(hat_, e_full_);
    {
        std::vector<cplx> ea = mulc(a, e_full_);
        K.caxpy(h / 6.0, ea.data(), out.data(), n);
        std::vector<cplx> bc = b;
        K.caxpy(1.0, c.data(), bc.data(), n);
        std::vector<cplx> ebc = mulc(bc, e_half_);
        K.caxpy(h / 3.0, ebc.data(), out.data(), n);
        K.caxpy(h / 6.0, d.data(), out.data(), n);
    }
    hat_ = std::move(out);
    t_ += h;
}

void BoSolver::advance_steps(std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        step();
}

Field BoSolver::state() const { return Field::of_spectrum(g_, hat_); }

double BoSolver::mean() const { return hat_[0].real() / g_.length; }

double BoSolver::mass() const
{
    return K.sumsq_cplx(hat_.data(), g_.n) / g_.length;
}

double BoSolver::hamiltonian() const
{
    // integral ||D|^{1/2}u|^2 = (1/L) sum |xi| |u_hat|^2
    std::vector<double> w(g_.n);
    for (std::size_t m = 0; m < g_.n; ++m)
        w[m] = std::fabs(g_.xi(m));
    const double quad = K.wsumsq_cplx(w.data(), hat_.data(), g_.n) / g_.length;

    Field u = state();
    const auto& v = u.values();
    double cubic = 0.0;
    for (std::size_t i = 0; i < g_.n; ++i)
        cubic += v[i] * v[i] * v[i];
    cubic *= g_.dx();
    return quad + cubic / 3.0;
}

Field BoSolver::time_derivative(const Field& u)
{
    Field adv = spectral::dx(spectral::mult_dealias(u, u));
    Field lin = spectral::dx_absd(u);
    adv *= 0.5;
    adv += lin;
    adv *= -1.0;
    return adv;
}

bool BoSolver::finite() const
{
    return std::isfinite(K.sumsq_cplx(hat_.data(), g_.n));
}

namespace {

double rel_drift(const std::vector<double>& v)
{
    if (v.empty())
        return 0.0;
    const double ref = std::max(std::fabs(v.front()), 1e-300);
    double d = 0.0;
    for (double x : v)
        d = std::max(d, std::fabs(x - v.front()));
    return d / ref;
}

} // namespace

double ConservationLedger::mean_drift() const
{
    double d = 0.0;
    for (double x : mean)
        d = std::max(d, std::fabs(x - mean.front()));
    return mean.empty() ? 0.0 : d;
}

double ConservationLedger::mass_drift() const { return rel_drift(mass); }
double ConservationLedger::hamiltonian_drift() const { return rel_drift(hamiltonian); }

RunResult run(const Field& u0, const RunConfig& cfg)
{
    if (!(cfg.t_end > 0.0))
        throw std::invalid_argument("run: t_end must be positive");
    if (cfg.record_every == 0)
        throw std::invalid_argument("run: record_every must be >= 1");

    double dt = cfg.dt;
    if (dt == 0.0) {
        const Grid& g = u0.grid();
        dt = 0.5 * g.length / (std::numbers::pi * static_cast<double>(g.n));
    }
    if (!(dt > 0.0))
        throw std::invalid_argument("run: dt must be positive");
    const auto nsteps =
        static_cast<std::size_t>(std::ceil(cfg.t_end / dt - 1e-9));
    dt = cfg.t_end / static_cast<double>(nsteps);

    BoSolver s(u0, dt);
    RunResult out;
    out.traj.g = u0.grid();

    auto record = [&]() {
        out.traj.times.push_back(s.t());
        out.traj.frames.push_back(s.state().values());
        out.ledger.times.push_back(s.t());
        out.ledger.mean.push_back(s.mean());
        out.ledger.mass.push_back(s.mass());
        out.ledger.hamiltonian.push_back(s.hamiltonian());
    };
    record();

    for (std::size_t i = 1; i <= nsteps; ++i) {
        s.step();
        if (!s.finite()) {
            out.blew_up = true;
            out.last_valid_time = s.t() - dt;
            return out;
        }
        if (i % cfg.record_every == 0 || i == nsteps)
            record();
    }
    out.last_valid_time = s.t();
    return out;
}

Trajectory galilean_reduce(const Trajectory& tr)
{
    if (tr.frames.empty())
        return tr;
    const Grid& g = tr.g;
    const Field first = Field::of_values(g, tr.frames.front());
    const double c = first.mean();

    Trajectory out;
    out.g = g;
    out.times = tr.times;
    out.frames.reserve(tr.frames.size());
    for (std::size_t i = 0; i < tr.frames.size(); ++i) {
        Field f = Field::of_values(g, tr.frames[i]);
        std::vector<cplx> hat = f.spectrum();
        const double shift = c * tr.times[i];
        for (std::size_t m = 0; m < g.n; ++m)
            hat[m] *= std::exp(cplx(0.0, g.xi(m) * shift));
        hat[0] -= g.length * c;  // subtract the mean (hat convention: mean*L)
        out.frames.push_back(Field::of_spectrum(g, std::move(hat)).values());
    }
    return out;
}

} // namespace bo::solver
