#include "paraproduct.hpp"

#include "spectral/operators.hpp"

namespace bo::lp {

Field paraproduct(const Partition& P, const Field& u, const Field& v, int margin)
{
    // S_i in the partial-sum sense sum_{j<=i-1} Delta_j: empty for i<=-1,
    // cutoff(i) for i>=0 (note cut(i) for i<0 would still pass the mean,
    // which belongs to shell -1 and must not be double counted here).
    Field acc(P.grid());
    for (int k = -1; k <= P.jmax(); ++k) {
        if (k - margin <= -1)
            continue;
        acc += spectral::mult(P.cut(k - margin, u), P.delta(k, v));
    }
    return acc;
}

Field bony_remainder(const Partition& P, const Field& u, const Field& v, int margin)
{
    Field acc(P.grid());
    for (int j = -1; j <= P.jmax(); ++j) {
        const Field uj = P.delta(j, u);
        const Field vb = P.band(j - margin, j + margin, v);
        acc += spectral::mult(uj, vb);
    }
    return acc;
}

Field commutator(const Partition& P, int j, const Field& a, const Field& w)
{
    return P.delta(j, spectral::mult(a, w)) - spectral::mult(a, P.delta(j, w));
}

CField commutator_plus(const Partition& P, int j, const Field& a, const CField& w)
{
    return P.delta_plus(j, spectral::mult(a, w)) - spectral::mult(a, P.delta_plus(j, w));
}

Field commutator_s(const Partition& P, int j, const Field& a, const Field& w)
{
    return P.cut(j, spectral::mult(a, w)) - spectral::mult(a, P.cut(j, w));
}

} // namespace bo::lp
