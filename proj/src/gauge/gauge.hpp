#pragma once

#include "lp/partition.hpp"
#include "solver/checkpoint.hpp"
#include "spectral/field.hpp"

#include <cstddef>
#include <vector>

namespace bo::gauge {

using solver::Trajectory;
using spectral::CField;
using spectral::cplx;
using spectral::Field;
using spectral::Grid;

// Normalized averaging bump: periodized Gaussian of width L/16 centered at
// L/2, renormalized on the grid so that integral psi dx == 1 exactly.
Field averaging_bump(const Grid& g);

// Fejer mean at dyadic level: triangular multiplier (1 - |s|/M)_+ with
// M = max(1, 2^level). Its kernel is nonnegative with unit mass, so the
// output at every point is a convex average of input values and
// |fejer_smooth(f)| <= max|f| pointwise. The gauge weights below need that
// bound exactly; a smooth compactly supported cutoff overshoots |F|=1 at
// O(|U|^2), which is far above the comparison slack.
std::vector<double> fejer_table(const Grid& g, int level);
CField fejer_smooth(int level, const CField& f);
Field fejer_smooth(int level, const Field& f);

// Primitive U(t,x) of u with the spatial constant fixed by averaging against
// psi and the time drift fixed by the correction
//   G'(t) = -integral (H psi') u dx - 1/2 integral psi u^2 dx,  G(0) = 0,
// so that d_x U = u and d_t U = -H d_x u - u^2/2 hold identically (the
// right side is mean-free only after the psi-average; G absorbs the rest).
// Frames must be mean-free to 1e-12; the Nyquist mode is dropped.
struct AntiDerivative {
    std::vector<double> times;
    std::vector<Field> U;
    Field psi;
    std::vector<double> correction;  // G(t) per frame (trapezoid in t)
};
AntiDerivative antiderivative(const Trajectory& tr);

// F = exp(sign * i U / 2); unimodular by construction
CField gauge_factor(const Field& U, double sign);

// Gauged shell data  w_j^+ = Fejer_j(F) Delta_j^+ u  for j = 0..jmax, plus
// the ungauged low block P^+ S_0 u. The full transform is
//   w^+ = P^+ S_0 u + sum_j w_j^+,   w = w^+ + conj(w^+)  (real).
struct GaugedPair {
    Trajectory u;
    AntiDerivative anti;
    double sign = 1.0;
    std::vector<CField> low;                   // P^+ S_0 u per frame
    std::vector<std::vector<CField>> w_shell;  // [frame][j], j = 0..jmax

    CField wplus(std::size_t frame) const;
    Field w(std::size_t frame) const;  // 2 Re w^+
};
GaugedPair gauge_forward(const Trajectory& tr, double sign = 1.0);

// Inverse transform by defect iteration: starting from u = w, repeatedly add
//   sum_j 2 Re[ Fejer_{j-2}(F^-1) (w_j^+ - Fejer_j(F) Delta_j^+ u) ]
//     + 2 Re[ low - P^+ S_0 u ]
// recomputing the antiderivative (hence F) from the current iterate each
// sweep. The exact preimage is a fixed point with all shell defects zero;
// the one-shot resolution Fejer_{j-2}(F^-1) w_j^+ alone carries an O(|u|^2)
// bias, so the defect form is what reaches round-trip accuracy. Requires
// ||u(0)||_2 <= 0.5 (contraction budget); throws on divergence.
struct InverseReport {
    Trajectory traj;
    int iterations = 0;
    double final_delta = 0.0;  // last max-over-frames update size in L^2
};
InverseReport gauge_inverse(const GaugedPair& gp, double tol = 1e-10,
                            int max_iter = 200);

// Exact shell decomposition of d_x Delta_j^+ (u^2) into
//   transport   2 u_< d_x u_j^+
//   commutator  2 [Delta_j^+, u_<] d_x util_j
//   lowhigh     2 Delta_j^+ ((d_x u_<) util_j)
//   highhigh    Delta_j^+ d_x ((u - u_<)^2)
// with u_< = S_{j-3} u and util_j the shells j-3..j+3. The sum reproduces
// d_x Delta_j^+(u^2) exactly (no remainder) provided products do not alias,
// i.e. for data band-limited to |s| < n/4. The localized forcing is
//   f_j^+ = -(commutator + lowhigh + highhigh)/2.
struct Paralinearization {
    CField transport, commutator, lowhigh, highhigh;
    CField sum() const;
};
Paralinearization paralinearize(const lp::Partition& P, const Field& u, int j);
CField shell_forcing(const lp::Partition& P, const Field& u, int j);

// Residual of the renormalized shell equation
//   d_t w_j^+ - i d_x^2 w_j^+ =
//     S(F) f_j^+ + S(d_t F - i d_x^2 F) u_j^+
//     + [ -S(F) u_<  - 2ic S(uF) ] d_x u_j^+,        S = Fejer_j, c = sign*i/2,
// which holds identically in the continuum for any smoothing S and either
// sign. d_t w is a centered difference, so the reported residual is O(dt^2)
// plus solver error; relative to max(||lhs||, ||rhs||), maximized over
// interior frames. A zero trajectory reports residual 0.
struct ResidualReport {
    int j = 0;
    double residual = 0.0;
    double lhs_norm = 0.0, rhs_norm = 0.0;  // at the worst frame
    double dt = 0.0;
    std::size_t worst_frame = 0;
};
ResidualReport renorm_residual(const GaugedPair& gp, int j);

} // namespace bo::gauge
