#pragma once

#include "spectral/field.hpp"
#include "spectral/grid.hpp"

#include <map>
#include <vector>

namespace bo::lp {

using spectral::CField;
using spectral::cplx;
using spectral::Field;
using spectral::Grid;

// Smooth glue S(x) = e(x)/(e(x)+e(1-x)) with e(x)=exp(-1/x); S=0 for x<=0,
// S=1 for x>=1, C^inf in between.
double glue(double x);

// Radial profile: 1 for r<=1, S(2-r) for 1<r<2, 0 for r>=2.
double profile(double r);

// Dyadic Littlewood-Paley partition over mode magnitude n = base_scale*|s|.
//   cutoff(j)[m] = profile(n/2^j)                   ("S_j", any integer j)
//   shell(j)     = cutoff(j+1) - cutoff(j)          (j = 0..jmax-1)
//   shell(jmax)  = 1 - cutoff(jmax)                 (top shell, absorbs Nyquist)
//   shell(-1)    = cutoff(0)                        (low block incl. the mean)
// so sum_{j=-1}^{jmax} shell(j) == 1 on every mode.
class Partition {
public:
    explicit Partition(const Grid& g, double base_scale = 1.0);

    const Grid& grid() const { return g_; }
    int jmax() const { return g_.jmax(); }
    double base_scale() const { return base_; }

    const std::vector<double>& cutoff(int j) const;
    const std::vector<double>& shell(int j) const;

    Field cut(int j, const Field& u) const;
    CField cut(int j, const CField& u) const;
    Field delta(int j, const Field& u) const;
    CField delta(int j, const CField& u) const;

    // Delta_j^+ = Delta_j P^+ (shell times half-line projection; drops the
    // mean and the Nyquist mode)
    CField delta_plus(int j, const Field& u) const;
    CField delta_plus(int j, const CField& u) const;

    // sum of shells j0..j1 (clamped), as a single multiplier table
    std::vector<double> band_table(int j0, int j1) const;
    Field band(int j0, int j1, const Field& u) const;

private:
    Grid g_;
    double base_;
    mutable std::map<int, std::vector<double>> cut_;
    mutable std::map<int, std::vector<double>> shell_;
};

} // namespace bo::lp
