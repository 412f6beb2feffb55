#pragma once

#include <cstdint>
#include <vector>

#include "hypcyl/geometry.hpp"
#include "hypcyl/rng.hpp"

namespace hypcyl {

/// Separated net of a ball window: centers pairwise >= packing apart, every
/// point of the window within covering of some center.
struct Net {
    int d = 0;
    double window_r = 0.0;
    double packing = 0.0;
    double covering = 0.0;
    std::vector<Point> centers;
};

struct NetOptions {
    std::uint64_t max_centers = 200000;
    std::uint64_t verify_samples = 100000;
    int max_verify_passes = 60;
};

/// Greedy net of B(o, r): random volume-uniform candidates rejected on the
/// packing constraint, then repeated covering passes that promote any
/// uncovered sample point to a center until a full pass stays clean.
Net greedy_net(RngStream& rng, int d, double r, double spacing, const NetOptions& opts = {});

/// Centers on the sphere of radius R: a 1/2-net of the shell
/// B(o, R+3/2) \ B(o, R-1/2) projected radially onto the sphere.
std::vector<Point> shell_ball_centers(RngStream& rng, int d, double R,
                                      const NetOptions& opts = {});

}  // namespace hypcyl
