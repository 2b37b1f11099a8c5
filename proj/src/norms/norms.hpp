#pragma once

#include "lp/blocks.hpp"
#include "lp/partition.hpp"
#include "solver/checkpoint.hpp"
#include "spectral/field.hpp"

#include <vector>

namespace bo::norms {

using solver::Trajectory;
using spectral::Field;

// grid L^p norm of sampled values with measure weight dx; p = inf -> max
double lp_grid(const std::vector<double>& v, double p, double dx);

// inhomogeneous Sobolev norm ((1/L) sum <xi>^{2 sigma} |u_hat|^2)^{1/2}
double hs_norm(const Field& f, double sigma);

// Besov B^{s,q}_p of a single frame; shells run j = -1 (the S_0 low block)
// through jmax; l^q over shells with q = inf -> max over shells
double besov(const lp::Partition& P, const Field& f, double s, double p, double q);

// Mixed space-time norms of one nonnegative block a[i][m] on a uniform
// [0,T) x [0,L) sampling. Time quadrature is the trapezoid rule over the
// recorded frames (L^inf_t is the frame max); space is the plain grid sum.
double mixed_time_outer(const std::vector<std::vector<double>>& a,
                        double p, double rho, double dx, double dt);
double mixed_space_outer(const std::vector<std::vector<double>>& a,
                         double p, double rho, double dx, double dt);

struct MixedSpec {
    double s;    // shell weight 2^{js}
    double p;    // space exponent
    double rho;  // time exponent
    double q;    // l^q over shells
};

// l^q_j of 2^{js} || ||Delta_j u(t,.)||_{L^p_x} ||_{L^rho_t}
double lb_norm(const Trajectory& tr, const MixedSpec& spec);
// l^q_j of 2^{js} || ||Delta_j u(.,x)||_{L^rho_t} ||_{L^p_x}
double bl_norm(const Trajectory& tr, const MixedSpec& spec);

// Solution-space norm at regularity s: the maximum of the four constituents.
struct YParts {
    double ct_besov;   // lb: p=2,   rho=inf, q=1, weight s
    double st_besov;   // lb: p=inf, rho=4,   q=1, weight s
    double smoothing;  // bl: p=inf, rho=2,   q=1, weight s+1/2
    double maximal;    // bl: p=4,   rho=inf, q=1, weight s-1/4
    double value() const;
};
YParts y_norm(const Trajectory& tr, double s);

// Dispersive block analysis of the trajectory (frame count must be a power
// of two; the span is treated as one period, so taper first unless the data
// is genuinely time-periodic). xsbq_norm is the l^q of 2^{js+kb}-weighted
// block norms.
lp::BlockNorms block_norms(const Trajectory& tr);
double xsbq_norm(const Trajectory& tr, double s, double b, double q);

// uniform frame spacing (throws if the time grid is not uniform)
double frame_dt(const Trajectory& tr);

} // namespace bo::norms
