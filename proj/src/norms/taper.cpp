#include "taper.hpp"

#include "lp/partition.hpp"

namespace bo::norms {

double taper_at(double r)
{
    if (r < 0.25)
        return lp::glue(4.0 * r);
    if (r < 0.75)
        return 1.0;
    return lp::glue(4.0 * (1.0 - r));
}

std::vector<double> taper_weights(std::size_t n)
{
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = taper_at(static_cast<double>(i) / static_cast<double>(n));
    return w;
}

Trajectory tapered(const Trajectory& tr)
{
    Trajectory out = tr;
    const auto w = taper_weights(out.frames.size());
    for (std::size_t i = 0; i < out.frames.size(); ++i)
        for (auto& x : out.frames[i])
            x *= w[i];
    return out;
}

} // namespace bo::norms
