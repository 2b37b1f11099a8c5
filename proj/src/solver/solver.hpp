#pragma once

#include "checkpoint.hpp"
#include "spectral/field.hpp"
#include "spectral/operators.hpp"

#include <cstddef>
#include <vector>

namespace bo::solver {

using spectral::CField;
using spectral::cplx;
using spectral::Field;
using spectral::Grid;

// Pseudospectral integrator for  d_t u + H d_x^2 u + u u_x = 0  on [0,L).
//
// Integrating-factor RK4: v = E(-t) u_hat absorbs the stiff linear phase
// exactly (E(t) = e^{-i t xi|xi|}), RK4 handles the dealiased nonlinearity
// N(u) = -1/2 d_x(u^2). The mean mode has zero symbol and identically zero
// nonlinear flux, so it is preserved bitwise.
class BoSolver {
public:
    BoSolver(const Field& u0, double dt = 0.0);  // dt = 0 -> 0.5 / xi_max

    void step();
    void advance_steps(std::size_t n);

    double t() const { return t_; }
    double dt() const { return dt_; }
    const Grid& grid() const { return g_; }
    Field state() const;

    double mean() const;         // (1/L) integral u
    double mass() const;         // integral u^2
    double hamiltonian() const;  // integral ||D|^{1/2} u|^2 + (1/3) integral u^3

    // d_t u evaluated from the equation's right-hand side
    static Field time_derivative(const Field& u);

    bool finite() const;  // state free of NaN/inf

private:
    std::vector<cplx> nonlin(const std::vector<cplx>& hat) const;

    Grid g_;
    double dt_ = 0.0;
    double t_ = 0.0;
    std::vector<cplx> hat_;              // current spectrum
    std::vector<cplx> e_full_, e_half_;  // propagator tables for dt, dt/2
    std::vector<cplx> dx_half_;          // -(i xi)/2 with Nyquist zeroed
};

// Conserved quantities sampled along a run; drifts are against the first row.
struct ConservationLedger {
    std::vector<double> times, mean, mass, hamiltonian;
    double mean_drift() const;         // max |mean(t) - mean(0)|
    double mass_drift() const;         // max relative
    double hamiltonian_drift() const;  // max relative
};

struct RunConfig {
    double dt = 0.0;               // 0 -> auto; shrunk to land on t_end exactly
    double t_end = 1.0;
    std::size_t record_every = 1;  // frame + ledger row every k steps
};

// If the state stops being finite the run halts: the result is flagged,
// last_valid_time reports the latest finite state (nothing is extrapolated),
// and the trajectory keeps only finite frames.
struct RunResult {
    Trajectory traj;
    ConservationLedger ledger;
    bool blew_up = false;
    double last_valid_time = 0.0;
};

RunResult run(const Field& u0, const RunConfig& cfg);

// Comoving reduction v(x,t) = u(x + c t, t) - c with c the (conserved) mean
// of the first frame: maps solutions to mean-zero solutions exactly, via
// spectral translation. Useful before gauge work, which wants zero mean.
Trajectory galilean_reduce(const Trajectory& tr);

} // namespace bo::solver
