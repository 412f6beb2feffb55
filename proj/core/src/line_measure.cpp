#include "hypcyl/line_measure.hpp"

#include <cmath>
#include <stdexcept>

namespace hypcyl {

double measure_hitting_ball(int d, double r) {
    if (d < 2) throw std::invalid_argument("measure_hitting_ball: d >= 2 required");
    if (r < 0.0) throw std::invalid_argument("measure_hitting_ball: r >= 0 required");
    return sphere_surface(d) * std::pow(std::sinh(r) / std::sinh(1.0), d - 1);
}

Geodesic sample_line_hitting_ball(RngStream& rng, int d, double r) {
    if (d < 2 || r <= 0.0) throw std::invalid_argument("sample_line_hitting_ball: bad inputs");
    const double u = rng.uniform();
    const double rho = std::asinh(std::sinh(r) * std::pow(u, 1.0 / (d - 1)));
    const Vec n = random_unit_vector(rng, d);
    const Vec m = random_unit_vector_orthogonal(rng, n);
    return Geodesic::from_foot(rho, n, m);
}

std::vector<Geodesic> sample_poisson_line_process(RngStream& rng, double u, int d, double r,
                                                  double max_expected) {
    if (u < 0.0) throw std::invalid_argument("sample_poisson_line_process: u >= 0 required");
    std::vector<Geodesic> lines;
    if (u == 0.0) return lines;
    const double mean = u * measure_hitting_ball(d, r);
    if (mean > max_expected)
        throw std::runtime_error("sample_poisson_line_process: window too large (expected " +
                                 std::to_string(mean) + " lines)");
    const long long count = rng.poisson(mean);
    lines.reserve(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) lines.push_back(sample_line_hitting_ball(rng, d, r));
    return lines;
}

HitRegion HitRegion::ball(Point center, double radius) {
    if (radius < 0.0) throw std::invalid_argument("HitRegion::ball: radius >= 0 required");
    HitRegion region;
    region.kind = Kind::ball;
    region.d = center.dim();
    region.center = std::move(center);
    region.radius = radius;
    return region;
}

HitRegion HitRegion::cylinder(Geodesic axis, double radius) {
    if (radius < 0.0) throw std::invalid_argument("HitRegion::cylinder: radius >= 0 required");
    HitRegion region;
    region.kind = Kind::cylinder;
    region.d = axis.dim();
    region.axis = std::move(axis);
    region.radius = radius;
    return region;
}

bool HitRegion::hit_by(const Geodesic& line) const {
    if (kind == Kind::ball) return dist_point_geodesic(center, line).d <= radius + 1e-12;
    const double c = std::cosh(radius + 1e-12);
    return cosh_sq_dist_geodesics(axis, line) <= c * c;
}

bool HitRegion::enclosed_in(double r) const {
    if (kind != Kind::ball) return false;
    return dist(center, Point::origin(d)) + radius <= r + 1e-12;
}

Estimate estimate_measure_intersection(RngStream& rng, const HitRegion& a, const HitRegion& b,
                                       double enclosing_r, std::uint64_t n) {
    if (a.d != b.d) throw std::invalid_argument("estimate_measure_intersection: dim mismatch");
    if (n == 0) throw std::invalid_argument("estimate_measure_intersection: n >= 1 required");
    if (!a.enclosed_in(enclosing_r) && !b.enclosed_in(enclosing_r))
        throw std::invalid_argument(
            "estimate_measure_intersection: neither region enclosed in the window");
    const double total = measure_hitting_ball(a.d, enclosing_r);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const Geodesic line = sample_line_hitting_ball(rng, a.d, enclosing_r);
        if (a.hit_by(line) && b.hit_by(line)) ++hits;
    }
    return binomial_estimate(hits, n, total, rng.master_seed());
}

}  // namespace hypcyl
