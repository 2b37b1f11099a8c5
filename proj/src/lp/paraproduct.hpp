#pragma once

#include "partition.hpp"

namespace bo::lp {

// Low-high paraproduct with margin M:
//   T_u v = sum_{k=-1}^{jmax} S_{k-M}(u) * Delta_k(v)
// (plain pointwise products). With the symmetric term and the remainder
//   R(u,v) = sum_{|j-k|<=M} Delta_j(u) * Delta_k(v)
// the Bony decomposition u*v = T_u v + T_v u + R(u,v) holds exactly on the
// grid, because the three index sets partition all shell pairs.
Field paraproduct(const Partition& P, const Field& u, const Field& v, int margin = 1);
Field bony_remainder(const Partition& P, const Field& u, const Field& v, int margin = 1);

// [Delta_j, a] w = Delta_j(a w) - a Delta_j(w), and the P^+ variant
Field commutator(const Partition& P, int j, const Field& a, const Field& w);
CField commutator_plus(const Partition& P, int j, const Field& a, const CField& w);

// [S_j, a] w = S_j(a w) - a S_j(w) with S_j = cut(j)
Field commutator_s(const Partition& P, int j, const Field& a, const Field& w);

} // namespace bo::lp
