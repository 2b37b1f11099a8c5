#pragma once

#include "spectral/grid.hpp"

#include <string>
#include <vector>

namespace bo::solver {

using spectral::Grid;

// Sampled solution frames at uniform or explicit times.
struct Trajectory {
    Grid g;
    std::vector<double> times;
    std::vector<std::vector<double>> frames;  // frames[i].size() == g.n
};

// Binary checkpoint: magic "BOTRAJv1", u32 endian tag 0x01020304,
// u64 n, f64 length, u64 frame count, then times and row-major frames.
void save_trajectory(const std::string& path, const Trajectory& t);
Trajectory load_trajectory(const std::string& path);

// every stride-th frame, starting from frame 0
Trajectory subsample(const Trajectory& t, std::size_t stride);

} // namespace bo::solver
