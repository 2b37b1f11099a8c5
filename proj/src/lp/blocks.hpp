#pragma once

#include "partition.hpp"

#include <functional>
#include <vector>

namespace bo::lp {

// Space-time conormal block analysis of a uniformly sampled trajectory on
// [0,L) x [0,T). Time FT convention pairs e^{-i tau t} with the spatial
// e^{-i xi x}, so a free wave e^{i(xi x - theta(xi) t)}, theta = xi|xi|,
// sits at tau = -theta(xi); the conormal distance is |tau + theta(xi)|,
// measured here in integer time-mode units nu = |tau + theta| * T/(2 pi)
// and sliced by the same dyadic profile as the spatial shells.
//
// Spatial shells use j = -1..jmax (low block at -1, absorbing top at jmax);
// tau shells use k = -1..kmax without top absorption, since nu is not
// bounded by the grid: mass with nu beyond the covered range is reported
// as unresolved_fraction instead of being silently binned.
struct BlockNorms {
    int jmax = 0;
    int kmax = 0;
    std::vector<double> sq;          // mass^2, indexed [sign][j+1][k+1]
    double total_l2 = 0.0;           // ||u||_{L^2(dx dt)}
    double unresolved_fraction = 0.0;

    double at(int sign, int j, int k) const;  // L2 norm of one block; sign 0:'+', 1:'-'
};

class ConormalAnalysis {
public:
    ConormalAnalysis(const Grid& g, std::size_t frames, double T);

    int jmax() const { return g_.jmax(); }
    int kmax() const;
    double theta(std::size_t m) const;
    double tau(std::size_t q) const;

    // traj[i] = field values at t_i = i*T/frames (frames rows of g.n samples)
    BlockNorms analyze(const std::vector<std::vector<double>>& traj) const;
    // same analysis for complex-valued frames (gauge blocks, block products)
    BlockNorms analyze(const std::vector<std::vector<cplx>>& traj) const;

    // Sum of the selected blocks as space-time samples (complex frames).
    // Summing every block reproduces the resolved part of the input; the
    // Nyquist column is dropped, consistent with analyze().
    std::vector<std::vector<cplx>>
    block_project(const std::vector<std::vector<double>>& traj,
                  const std::function<bool(int sign, int j, int k)>& select) const;

private:
    std::vector<cplx> spacetime_spectrum(const std::vector<std::vector<double>>& traj) const;
    std::vector<cplx> spacetime_spectrum(const std::vector<std::vector<cplx>>& traj) const;
    BlockNorms accumulate(const std::vector<cplx>& A) const;

    Grid g_;
    std::size_t nt_;
    double T_;
};

// l^q of 2^{j s + k b} * blocknorm over all (sign, j, k); q = inf -> max
double xsbq(const BlockNorms& B, double s, double b, double q);

} // namespace bo::lp
