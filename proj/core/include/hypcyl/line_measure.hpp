#pragma once

#include <cstdint>
#include <vector>

#include "hypcyl/geometry.hpp"
#include "hypcyl/monte_carlo.hpp"
#include "hypcyl/rng.hpp"

namespace hypcyl {

inline constexpr double kDefaultLineCap = 5e6;  // max expected lines per window

/// Invariant-measure mass of lines meeting B(o, r):
/// O_{d-1} sinh^{d-1}(r) / sinh^{d-1}(1).
double measure_hitting_ball(int d, double r);

/// Exact sampler of the invariant measure restricted to lines meeting
/// B(o, r): rho = asinh(sinh(r) U^{1/(d-1)}), foot direction uniform on
/// S^{d-1}, tangent uniform on the orthogonal directions at the foot.
Geodesic sample_line_hitting_ball(RngStream& rng, int d, double r);

/// Poisson line process of intensity u in the window ball B(o, r).
std::vector<Geodesic> sample_poisson_line_process(RngStream& rng, double u, int d, double r,
                                                  double max_expected = kDefaultLineCap);

/// A set of lines described by the body they hit: a ball or a solid cylinder.
struct HitRegion {
    enum class Kind { ball, cylinder };
    Kind kind;
    Point center;    // ball
    double radius = 0.0;
    Geodesic axis;   // cylinder
    int d = 0;

    static HitRegion ball(Point center, double radius);
    static HitRegion cylinder(Geodesic axis, double radius);
    bool hit_by(const Geodesic& line) const;
    /// Whether the region sits inside B(o, r); always false for cylinders.
    bool enclosed_in(double r) const;
};

/// Window Monte Carlo for mu(L_A intersect L_B): sample lines hitting
/// B(o, enclosing_r) and scale the joint hit fraction by the window mass.
/// Unbiased provided at least one region is enclosed in the window (every
/// line meeting both then meets the window); errors otherwise.
Estimate estimate_measure_intersection(RngStream& rng, const HitRegion& a, const HitRegion& b,
                                       double enclosing_r, std::uint64_t n);

}  // namespace hypcyl
