#pragma once

#include "checkpoint.hpp"
#include "spectral/field.hpp"

namespace bo::solver {

using spectral::Field;

// Dyadic symmetry scaling u_lambda(x,t) = lambda u(lambda x, lambda^2 t)
// with lambda = 2^m. The grid maps onto itself: on the target grid of
// length L/lambda the node x'_i satisfies lambda x'_i = x_i, so samples
// carry over index-for-index (scaled by lambda) and no interpolation is
// involved. ||u_lambda||_2 = lambda^{1/2} ||u||_2 exactly.
Field rescale(const Field& u, int log2_lambda);
Trajectory rescale(const Trajectory& tr, int log2_lambda);

} // namespace bo::solver
