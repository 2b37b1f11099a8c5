#pragma once

#include "field.hpp"

#include <functional>
#include <vector>

namespace bo::spectral {

// Builds a multiplier table over unsigned mode index m from a symbol of the
// continuous frequency xi. Symbols with a sign discontinuity must zero the
// Nyquist mode themselves (its sign is ambiguous); helpers below do.
std::vector<cplx> multiplier(const Grid& g, const std::function<cplx(double)>& symbol);

Field apply_mult(const std::vector<double>& mult, const Field& f);
CField apply_mult(const std::vector<double>& mult, const CField& f);
CField apply_mult(const std::vector<cplx>& mult, const CField& f);

// d^k/dx^k; odd orders zero the Nyquist mode
Field dx(const Field& f, int order = 1);
CField dx(const CField& f, int order = 1);

// Hilbert transform, symbol -i sgn(xi); sgn(0) = 0, Nyquist zeroed
Field hilbert(const Field& f);

// |D|^p, symbol |xi|^p
Field abs_d(const Field& f, double power);

// The linear BO operator H d_x^2 = d_x|D|, symbol i xi |xi|; Nyquist zeroed
Field dx_absd(const Field& f);

// Frequency half-line projections: P+ keeps xi > 0, P- keeps xi < 0; the mean
// and the Nyquist mode are dropped by both. For real u: u = mean + P+u + P-u
// on Nyquist-free data, with P-u = conj(P+u).
CField pplus(const Field& f);
CField pplus(const CField& f);
CField pminus(const CField& f);

// phase table e^{-i t xi|xi|} (Nyquist zeroed): exact free propagator of
// d_t u + H d_x^2 u = 0 over time t
std::vector<cplx> free_phase(const Grid& g, double t);
Field evolve_free(const Field& f, double t);
CField evolve_free(const CField& f, double t);

// zero all modes with |s| > n/3 (2/3-rule dealias filter)
Field dealias(const Field& f);
void dealias_spectrum(const Grid& g, std::vector<cplx>& hat);

Field mult(const Field& a, const Field& b);           // plain pointwise product
Field mult_dealias(const Field& a, const Field& b);   // dealias(a*b)
CField mult(const CField& a, const CField& b);
CField mult(const Field& a, const CField& b);

} // namespace bo::spectral
