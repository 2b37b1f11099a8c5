#pragma once

#include "solver/checkpoint.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace bo::norms {

using solver::Trajectory;

// C^inf time window on [0,1): ramps up on the first quarter, 1 on the
// central half, ramps down on the last quarter. Built from the same smooth
// glue as the frequency partition, so a tapered frame sequence is smoothly
// time-periodic and safe for the space-time block transform.
double taper_at(double r);

// taper_at(i/n) for i = 0..n-1
std::vector<double> taper_weights(std::size_t n);

// frames scaled by taper_at(i/n); times untouched
Trajectory tapered(const Trajectory& tr);

// identifies the window in reports
inline const char* taper_id() { return "cinf-bump v1 quarters"; }

} // namespace bo::norms
