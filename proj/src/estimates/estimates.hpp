#pragma once

#include "lp/blocks.hpp"
#include "lp/partition.hpp"
#include "norms/norms.hpp"
#include "solver/checkpoint.hpp"
#include "spectral/field.hpp"

#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

// Randomized stress lab for the dispersive inequalities. Each suite builds a
// data family designed to saturate one estimate, evaluates both sides with
// the measuring machinery (norms / block analysis), and reports lhs/rhs_scale
// ratios; flatness of the ratio across a dyadic sweep is the actual check.
// Nothing here reuses a proof: left sides are measured, right sides are the
// claimed scale times measured input norms.

namespace bo::estimates {

using solver::Trajectory;
using spectral::CField;
using spectral::cplx;
using spectral::Field;
using spectral::Grid;

// ---------------------------------------------------------------- reports

inline constexpr int no_index = std::numeric_limits<int>::min();

// One measurement. Indices that do not apply stay at no_index and print as
// empty CSV cells. For block products, signs is "(output)(v)(u)", e.g. "+-+".
struct EstimateReport {
    std::string estimate_id;
    int j = no_index, k = no_index;        // u block
    int jp = no_index, kp = no_index;      // v block (j', k')
    int jpp = no_index, kpp = no_index;    // output block (j'', k'')
    std::string signs;
    std::uint32_t seed = 0;
    double lhs = 0.0;
    double rhs_scale = 0.0;
    double ratio = 0.0;  // lhs / rhs_scale
};

std::string csv_header();
std::string csv_row(const EstimateReport& r);  // 17 significant digits

// max(ratio)/min(ratio) over the sweep; ignores entries with rhs_scale == 0
// (skipped data); returns inf if any surviving ratio is nonfinite or <= 0
double plateau_factor(const std::vector<EstimateReport>& reports);

// ------------------------------------------------------------- ensembles

// Unit-L2 coherent wave packet on shell j: Gaussian envelope of width
// (shell center)/8 around the shell's unit-weight magnitude, shell-weighted,
// random center and carrier phase. Real, mean-zero.
Field shell_packet(const lp::Partition& P, int j, std::mt19937& rng);
// Unit-L2 Hermitian white noise weighted by shell j.
Field shell_noise(const lp::Partition& P, int j, std::mt19937& rng);
// Unit-L2 Hermitian white noise under cutoff(band).
Field low_noise(const lp::Partition& P, int band, std::mt19937& rng);

// Free dispersive flow e^{-t H d_x^2} sampled at t_i = i*T/frames, i <
// frames (one period of the block transform; taper before measuring).
Trajectory free_trajectory(const Field& u0, double T, std::size_t frames);

// X^{s,b,q} norms in absolute time-frequency units: the block analysis bins
// modulation in window harmonics nu = |q + theta T/2pi|, so its 2^{kb}
// weights depend on the window length. Multiplying by (2pi/T)^b converts to
// the absolute modulation (2pi nu/T)^b exactly (all bands shift uniformly),
// which makes ratios comparable across window sizes -- the sweeps below
// shrink the window with the shell and rely on this. xsbq_c is the same for
// complex frame sequences; the caller tapers both.
double xsbq_abs(const Trajectory& tr, double s, double b, double q);
double xsbq_c(const Grid& g, const std::vector<std::vector<cplx>>& frames,
              double T, double s, double b, double q);

// ---------------------------------------------------- linear free suites
//
// The three linear estimates are scale stories about a single dyadic shell,
// so the sweep shrinks the observation window with the shell: T_j =
// window4 * 4^{-j} (one quarter-period of the fastest phase in shell j on
// the unit circle). Coherent packets saturate all three; isotropic shell
// noise does not (it spreads over ~2^{j/2} uncorrelated packets), which is
// itself checked in the tests.

struct LinearSuite {
    std::size_t n = 2048;
    double length = 2.0 * std::numbers::pi;
    std::size_t frames = 256;
    double window4 = 4.0;  // T_j = window4 * 4^{-j}
    int seeds = 20;
    std::uint32_t seed0 = 1001;
};

// ||u||_{L^4_t B^{s,1}_inf} <= C ||u||_{X^{s,1/2,1}}
std::vector<EstimateReport> strichartz_ratio(const LinearSuite& cfg, double s,
                                             int j_lo, int j_hi);
// ||u||_{B^{0,1}_4 L^inf_t} <= C ||u||_{X^{1/4,1/2,1}}
std::vector<EstimateReport> maximal_ratio(const LinearSuite& cfg,
                                          int j_lo, int j_hi);
// ||u||_{B^{s+1/2,1}_inf L^2_t} <= C ||u||_{X^{s,1/2,1}}
std::vector<EstimateReport> smoothing_ratio(const LinearSuite& cfg, double s,
                                            int j_lo, int j_hi);

// ------------------------------------------------------- bilinear suite
//
// ||S_{j-1}u Delta_j v||_{L^2_{t,x}} <= C 2^{-j/2} ||u||_{X^{0,1/2,1}}
// ||v||_{X^{0,1/2,1}}. The 2^{-j/2} gain is a transversality effect: over a
// window T_j ~ 2^{-j} the shell-j group velocity sweeps the low-frequency
// field once, averaging the product. Windows fixed in j hide part of the
// gain on the torus (periodic revisits), windows ~4^{-j} freeze the sweep;
// the tests check both as drift contrasts (ratio trends up resp. down the
// sweep while the matched window stays flat).

struct BilinearSuite {
    std::size_t n = 4096;
    double length = 2.0 * std::numbers::pi;
    std::size_t frames = 512;
    double window2 = std::numbers::pi / 8.0;  // T_j = window2 * window_pow^{-j}
    double window_pow = 2.0;  // 1 = fixed windows, 4 = frozen sweep (contrasts)
    int low_band = 1;  // u lives under cutoff(low_band)
    int seeds = 20;
    std::uint32_t seed0 = 2001;
};

std::vector<EstimateReport> bilinear_ratio(const BilinearSuite& cfg,
                                           int j_lo, int j_hi);

// --------------------------------------------- bilinear Plancherel identity
//
// For f, g with compactly supported, disjoint frequency profiles and
// C(t,xi) = integral conj(g)(eta) f(xi+eta) e^{i t xi(xi+2 eta)} d eta,
//   integral |C(t,xi)|^2 dxi dt = pi * double-integral
//       |f(lambda)|^2 |g(eta)|^2 / |lambda - eta| d lambda d eta.
// Profiles live on a common lattice xi0 + m*dxi; the t-integral over
// [-span/2, span/2] is exact per frequency pair, so the only deviation from
// the identity is the finite span (and the lattice quadrature of smooth
// profiles, which is negligible). Span doubling must shrink the error.

struct FreqProfile {
    double xi0 = 0.0;  // frequency of a[0]
    double dxi = 0.0;  // lattice step, > 0
    std::vector<cplx> a;
};

FreqProfile gaussian_bump(double center, double sigma, double dxi,
                          double nsigma = 8.0);
FreqProfile flat_bump(double lo, double hi, double dxi);  // indicator

struct PlancherelResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_err = 0.0;
};

// Throws std::invalid_argument on mismatched lattices, overlapping (gap
// <= 0) supports, or a span so long the lattice xi sum aliases (needs
// span * max|xi| * dxi <= pi). Zero data gives {0, 0, 0}.
PlancherelResult plancherel_bilinear_identity(const FreqProfile& f,
                                              const FreqProfile& g,
                                              double time_span);

// ------------------------------------------------- block product estimates
//
// Products of two conormal blocks, measured against the claimed dyadic
// scale. Indices are sorted over all three factors: flat/natural/sharp =
// min/middle/max of (j, j', j'') resp. (k, k', k''). Cases:
//   sobolev  any signs:          2^{(j_flat + k_flat)/2}
//   ppp2     +++, k''=ksharp:    2^{k_flat/2 + (k_nat - j_nat)/2}
//   pmp2     +-+, k''=ksharp:    2^{k_flat/2 + (k_nat - j_flat)/2}
//   ppp21    +++, j~j'~j'':      2^{k_flat/2 + k_nat/4}
//   pmp0     +-+, k =ksharp:     2^{k_flat/2 + k_nat/4}
//   pmp1     +-+, j'<<j~j'':     2^{k_flat/2 + (k_nat - j_nat)/2}
// The literal +++ configuration with j'' << j ~ j' is support-empty (two
// comparable positive frequencies cannot sum to a small one); ppp2 therefore
// exercises the same scale in the realizable low-high +++ pattern, and the
// vanishing scan certifies the empty one.
//
// Data are sparse space-time spectra: coefficient lattices hugging the
// block's characteristic parabola with Gaussian moduli and translation
// (linear) phases. Translation coherence is what saturates the bounds;
// fully random phases lose a factor ~sqrt(pairs per resonant slot) and are
// kept as a cross-check, not as the sweep.

enum class BlockCase { sobolev, ppp2, pmp2, ppp21, pmp0, pmp1 };
const char* block_case_name(BlockCase c);

std::vector<EstimateReport> block_product_ratio(BlockCase c, int seeds = 20,
                                                std::uint32_t seed0 = 3001);

// Exhaustive support scan: all sign pairs and j, j', j'' <= scan_max with
// k = k' = 0; expected_vanish is decided from the mode-support sum sets, and
// out_mass must be < 1e-10 whenever it is set.
struct VanishingReport {
    int sign_v = 0, sign_u = 0;  // 0:'+', 1:'-'
    int j = 0, jp = 0, jpp = 0;
    double out_mass = 0.0;       // output-shell mass of the product, all k''
    double in_mass = 0.0;        // ||u|| * ||v||
    bool expected_vanish = false;
};
std::vector<VanishingReport> vanishing_scan(int scan_max = 6);

// ------------------------------------------------------ product-law spots
//
// Headline paraproduct / remainder laws, spot-checked on random dispersive
// data at a few (s, s') pairs (both signs of the v factor):
//   R1:  d_x P+ R(P^pm v, P+ u)  in X^{s+s'' = s+s', -1/2, 1},  s+s' >= -1/2
//   T3:  P+ T_{P^pm v} P+ u      in X^{s+s'+1, -1/2, 1},        s' <= -1/2
//   T4b: P+ T_{P^pm v} P+ u      in X^{s, -1/2, 1},   u in X^{s,1/2,2},
//                                                     v in X^{-1,1/2,2}
//   R1b: d_x P+ R(P^pm v, P+ u)  in X^{-1/2, -1/2, 1}, u in X^{-1/2,1/2,1},
//                                     v in X^{0,1/2,2} cap X^{0,1/4,1}
struct ProductLawReport {
    std::string law;
    int pm = 0;  // 0:'+', 1:'-'
    double s = 0.0, sp = 0.0;
    std::uint32_t seed = 0;
    double lhs = 0.0, rhs = 0.0, ratio = 0.0;
};
std::vector<ProductLawReport> product_law_spot_checks(int seeds = 5,
                                                      std::uint32_t seed0 = 7001);

// ------------------------------------------------------------ flow map
//
// Hoelder continuity of the data-to-solution map: solve from u0 and
// u0 + eps*dir down an epsilon ladder and fit log(diff norm) vs log(eps).
// Lipschitz in C_t B^{-1/2,1}_2, at least C^{1/3} in C_t L^2, at least
// C^{1/4} into X^{0,1/2,1} (measured slopes above the exponent pass).

struct FlowPair {
    double epsilon = 0.0;
    double ct_l2 = 0.0;        // max_t ||u - v||_2
    double ct_besov = 0.0;     // max_t ||u - v||_{B^{-1/2,1}_2}
    double x_norm = 0.0;       // ||tapered(u - v)||_{X^{0,1/2,1}}
};

struct FlowHolder {
    std::vector<FlowPair> pairs;  // epsilon descending
    double slope_ct_l2 = 0.0;     // least-squares d log(norm) / d log(eps)
    double slope_ct_besov = 0.0;
    double slope_x = 0.0;
};

FlowHolder flow_holder_experiment(const Field& u0, const Field& dir,
                                  const std::vector<double>& eps_ladder,
                                  double t_end, std::size_t frames = 64);

// ----------------------------------------------------------- commutator
//
// ||[S_j, g] f||_2 <= ||g'||_inf ||theta_j||_1 ||f||_2 with theta_j(z) =
// |z|_per |kernel_j(z)|, kernel_j = the S_j convolution kernel; and
// 2^j ||theta_j||_1 is bounded (kernel scaling). The mixed variant pairs
// L^4_t L^inf_x x L^4_t L^2_x -> L^2_{t,x} along free flows.

struct CommutatorSuite {
    std::size_t n = 1024;
    double length = 2.0 * std::numbers::pi;
    int seeds = 50;
    std::uint32_t seed0 = 4001;
};

// quadrature ||theta_j||_1 on the grid
double kernel_theta_l1(const lp::Partition& P, int j);
// mean-zero circle-Lipschitz ramp (triangle wave), spectrally smoothed so
// |g'| <= ~1 without ringing; returns g with measured ||g'||_inf ~ 1
Field sawtooth(const Grid& g, int smooth_band = 24);

// ratio = 2^j ||[S_j,g] f||_2 / (||g'||_inf ||f||_2), f = shell-j noise
std::vector<EstimateReport> commutator_ratio(const CommutatorSuite& cfg,
                                             int j_lo, int j_hi);
// ratio = 2^j ||[S_j,g] f||_{L^2_{t,x}} / (||g'||_{L^4_t L^inf} ||f||_{L^4_t L^2})
// along free evolutions of g and f
std::vector<EstimateReport> commutator_ratio_mixed(const CommutatorSuite& cfg,
                                                   int j_lo, int j_hi);

// -------------------------------------------------- interpolation lemma
//
// For s0 < s < s1:  sum_n 2^{n s} a_n  <=  C(s0,s,s1) *
// (sup_n 2^{n s0} a_n)^theta (sup_n 2^{n s1} a_n)^{1-theta} with theta =
// (s1-s)/(s1-s0); C = 1/(1-2^{-(s-s0)}) + 1/(1-2^{-(s1-s)}) by splitting
// the sum at the crossover index and summing both geometric tails over Z.

double interpolation_constant(double s0, double s, double s1);

struct InterpolationCheck {
    double lhs = 0.0;    // sum_n 2^{ns} a_n
    double bound = 0.0;  // C * A0^theta A1^{1-theta}
};
InterpolationCheck interpolation_inequality(const std::vector<double>& a,
                                            double s0, double s, double s1);

} // namespace bo::estimates
