#pragma once

#include "spectral/field.hpp"

namespace bo::solver {

using spectral::Field;
using spectral::Grid;

// Periodized soliton of  d_t u + H d_x^2 u + u u_x = 0  on [0,L).
//
// On the line the solitons of this sign convention are negative left-movers
// u(x,t) = -4c / (1 + c^2 (x + c t)^2). Periodizing over L (Poisson
// summation) gives, with k = 2 pi / L and beta = 2 pi / (c L),
//   phi_c(x) = -(4 pi / L) sinh(beta) / (cosh(beta) - cos(k x)),
// which is an exact traveling wave of the periodic equation with the
// slightly corrected speed  c_L = (2 pi / L) coth(beta) = c * beta coth(beta)
// (leftward: u(x,t) = phi_c(x + c_L t)). Its integral is exactly -4 pi for
// every L, and the trough value is -2 k coth(beta/2).
struct Soliton {
    double c = 1.0;   // line-soliton parameter (c > 0)
    double x0 = 0.0;  // trough location at t = 0
    double L = 2.0 * 3.141592653589793;

    double k() const;
    double beta() const;
    double speed() const;     // c_L, leftward
    double integral() const;  // exactly -4 pi
    double trough() const;

    double eval(double x, double t = 0.0) const;
    Field sample(const Grid& g, double t = 0.0) const;
};

} // namespace bo::solver
