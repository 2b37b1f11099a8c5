#include "blocks.hpp"

#include "spectral/fft.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace bo::lp {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

double BlockNorms::at(int sign, int j, int k) const
{
    const std::size_t nj = static_cast<std::size_t>(jmax) + 2;
    const std::size_t nk = static_cast<std::size_t>(kmax) + 2;
    const std::size_t idx =
        (static_cast<std::size_t>(sign) * nj + static_cast<std::size_t>(j + 1)) * nk +
        static_cast<std::size_t>(k + 1);
    return std::sqrt(sq[idx]);
}

ConormalAnalysis::ConormalAnalysis(const Grid& g, std::size_t frames, double T)
    : g_(g), nt_(frames), T_(T)
{
    if (nt_ < 16 || (nt_ & (nt_ - 1)) != 0)
        throw std::invalid_argument("frame count must be a power of two >= 16");
    if (!(T > 0.0))
        throw std::invalid_argument("time span must be positive");
}

int ConormalAnalysis::kmax() const
{
    int lg = 0;
    while ((1u << (lg + 1)) <= nt_)
        ++lg;
    return lg - 3;  // log2(nt/2) - 2
}

double ConormalAnalysis::theta(std::size_t m) const
{
    const double xi = g_.xi(m);
    return xi * std::fabs(xi);
}

double ConormalAnalysis::tau(std::size_t q) const
{
    const int s = q <= nt_ / 2 ? static_cast<int>(q)
                               : static_cast<int>(q) - static_cast<int>(nt_);
    return two_pi * s / T_;
}

namespace {

// x-FFT per frame (x dx), then t-FFT per spatial mode (x dt); A[m*nt + q]
template <class Frame>
std::vector<cplx> spectrum_impl(const Grid& g, std::size_t nt, double T,
                                const std::vector<Frame>& traj)
{
    if (traj.size() != nt)
        throw std::invalid_argument("trajectory frame count mismatch");
    const std::size_t nx = g.n;
    const double dt = T / static_cast<double>(nt);

    std::vector<cplx> A(nx * nt);
    const auto& fx = spectral::Fft::get(nx);
    std::vector<cplx> in(nx), out(nx);
    for (std::size_t i = 0; i < nt; ++i) {
        if (traj[i].size() != nx)
            throw std::invalid_argument("frame size mismatch");
        for (std::size_t m = 0; m < nx; ++m)
            in[m] = traj[i][m];
        fx.forward(in.data(), out.data());
        for (std::size_t m = 0; m < nx; ++m)
            A[m * nt + i] = out[m] * g.dx();
    }
    const auto& ft = spectral::Fft::get(nt);
    std::vector<cplx> row(nt);
    for (std::size_t m = 0; m < nx; ++m) {
        ft.forward(&A[m * nt], row.data());
        for (std::size_t q = 0; q < nt; ++q)
            A[m * nt + q] = row[q] * dt;
    }
    return A;
}

} // namespace

std::vector<cplx>
ConormalAnalysis::spacetime_spectrum(const std::vector<std::vector<double>>& traj) const
{
    return spectrum_impl(g_, nt_, T_, traj);
}

std::vector<cplx>
ConormalAnalysis::spacetime_spectrum(const std::vector<std::vector<cplx>>& traj) const
{
    return spectrum_impl(g_, nt_, T_, traj);
}

BlockNorms ConormalAnalysis::analyze(const std::vector<std::vector<double>>& traj) const
{
    return accumulate(spacetime_spectrum(traj));
}

BlockNorms ConormalAnalysis::analyze(const std::vector<std::vector<cplx>>& traj) const
{
    return accumulate(spacetime_spectrum(traj));
}

BlockNorms ConormalAnalysis::accumulate(const std::vector<cplx>& A) const
{
    const std::size_t nx = g_.n;

    BlockNorms B;
    B.jmax = jmax();
    B.kmax = kmax();
    const std::size_t nj = static_cast<std::size_t>(B.jmax) + 2;
    const std::size_t nk = static_cast<std::size_t>(B.kmax) + 2;
    B.sq.assign(2 * nj * nk, 0.0);

    // spatial shell weights per mode (tau-independent)
    Partition px(g_);
    std::vector<const std::vector<double>*> wx(nj);
    for (int j = -1; j <= B.jmax; ++j)
        wx[static_cast<std::size_t>(j + 1)] = &px.shell(j);

    const double resolved_edge = std::ldexp(1.0, B.kmax + 1);
    double total = 0.0, unresolved = 0.0;

    std::vector<double> wt(nk);
    for (std::size_t m = 0; m < nx; ++m) {
        const int s = g_.signed_mode(m);
        const double th = theta(m);
        const bool nyq = (m == nx / 2);
        const int sign = (s >= 0) ? 0 : 1;  // s==0 assigned to '+'
        for (std::size_t q = 0; q < nt_; ++q) {
            const double a2 = std::norm(A[m * nt_ + q]);
            total += a2;
            if (nyq || a2 == 0.0)
                continue;
            const double nu = std::fabs(tau(q) + th) * T_ / two_pi;
            unresolved += a2 * (1.0 - profile(nu / resolved_edge));
            wt[0] = profile(nu);
            for (int k = 0; k <= B.kmax; ++k)
                wt[static_cast<std::size_t>(k + 1)] =
                    profile(nu * std::ldexp(1.0, -(k + 1))) -
                    profile(nu * std::ldexp(1.0, -k));
            for (int j = -1; j <= B.jmax; ++j) {
                const double wj = (*wx[static_cast<std::size_t>(j + 1)])[m];
                if (wj == 0.0)
                    continue;
                for (int k = -1; k <= B.kmax; ++k) {
                    const double w = wj * wt[static_cast<std::size_t>(k + 1)];
                    if (w != 0.0)
                        B.sq[(static_cast<std::size_t>(sign) * nj +
                              static_cast<std::size_t>(j + 1)) *
                                 nk +
                             static_cast<std::size_t>(k + 1)] += a2 * w * w;
                }
            }
        }
    }

    const double lt = g_.length * T_;
    for (auto& v : B.sq)
        v /= lt;
    B.total_l2 = std::sqrt(total / lt);
    B.unresolved_fraction = total > 0.0 ? unresolved / total : 0.0;
    return B;
}

std::vector<std::vector<cplx>>
ConormalAnalysis::block_project(const std::vector<std::vector<double>>& traj,
                                const std::function<bool(int sign, int j, int k)>& select) const
{
    const std::size_t nx = g_.n;
    std::vector<cplx> A = spacetime_spectrum(traj);

    const int jm = jmax();
    const int km = kmax();
    Partition px(g_);
    std::vector<const std::vector<double>*> wx(static_cast<std::size_t>(jm) + 2);
    for (int j = -1; j <= jm; ++j)
        wx[static_cast<std::size_t>(j + 1)] = &px.shell(j);

    std::vector<double> wt(static_cast<std::size_t>(km) + 2);
    for (std::size_t m = 0; m < nx; ++m) {
        const int s = g_.signed_mode(m);
        const double th = theta(m);
        const bool nyq = (m == nx / 2);
        const int sign = (s >= 0) ? 0 : 1;
        for (std::size_t q = 0; q < nt_; ++q) {
            if (nyq) {
                A[m * nt_ + q] = 0.0;
                continue;
            }
            const double nu = std::fabs(tau(q) + th) * T_ / two_pi;
            wt[0] = profile(nu);
            for (int k = 0; k <= km; ++k)
                wt[static_cast<std::size_t>(k + 1)] =
                    profile(nu * std::ldexp(1.0, -(k + 1))) -
                    profile(nu * std::ldexp(1.0, -k));
            double w = 0.0;
            for (int j = -1; j <= jm; ++j) {
                const double wj = (*wx[static_cast<std::size_t>(j + 1)])[m];
                if (wj == 0.0)
                    continue;
                for (int k = -1; k <= km; ++k)
                    if (select(sign, j, k))
                        w += wj * wt[static_cast<std::size_t>(k + 1)];
            }
            A[m * nt_ + q] *= w;
        }
    }

    // invert: time rows first (x 1/T), then space columns (x 1/L)
    const auto& ft = spectral::Fft::get(nt_);
    std::vector<cplx> row(nt_);
    for (std::size_t m = 0; m < nx; ++m) {
        ft.backward(&A[m * nt_], row.data());
        for (std::size_t q = 0; q < nt_; ++q)
            A[m * nt_ + q] = row[q] / T_;
    }
    const auto& fx = spectral::Fft::get(nx);
    std::vector<std::vector<cplx>> frames(nt_, std::vector<cplx>(nx));
    std::vector<cplx> col(nx), outc(nx);
    for (std::size_t i = 0; i < nt_; ++i) {
        for (std::size_t m = 0; m < nx; ++m)
            col[m] = A[m * nt_ + i];
        fx.backward(col.data(), outc.data());
        for (std::size_t m = 0; m < nx; ++m)
            frames[i][m] = outc[m] / g_.length;
    }
    return frames;
}

double xsbq(const BlockNorms& B, double s, double b, double q)
{
    const bool linf = !std::isfinite(q);
    double acc = 0.0;
    for (int sign = 0; sign < 2; ++sign)
        for (int j = -1; j <= B.jmax; ++j)
            for (int k = -1; k <= B.kmax; ++k) {
                const double term =
                    std::pow(2.0, j * s + k * b) * B.at(sign, j, k);
                if (linf)
                    acc = std::max(acc, term);
                else
                    acc += std::pow(term, q);
            }
    return linf ? acc : std::pow(acc, 1.0 / q);
}

} // namespace bo::lp
