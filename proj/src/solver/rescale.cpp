#include "rescale.hpp"

#include <cmath>

namespace bo::solver {

Field rescale(const Field& u, int log2_lambda)
{
    const double lam = std::ldexp(1.0, log2_lambda);
    const Grid g2(u.grid().n, u.grid().length / lam);
    auto v = u.values();
    for (auto& x : v)
        x *= lam;
    return Field::of_values(g2, std::move(v));
}

Trajectory rescale(const Trajectory& tr, int log2_lambda)
{
    const double lam = std::ldexp(1.0, log2_lambda);
    Trajectory out;
    out.g = Grid(tr.g.n, tr.g.length / lam);
    out.times = tr.times;
    for (auto& t : out.times)
        t /= lam * lam;
    out.frames = tr.frames;
    for (auto& f : out.frames)
        for (auto& x : f)
            x *= lam;
    return out;
}

} // namespace bo::solver
