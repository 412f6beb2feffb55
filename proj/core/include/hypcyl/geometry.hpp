#pragma once

#include <cstdint>
#include <vector>

#include "hypcyl/rng.hpp"

namespace hypcyl {

using Vec = std::vector<double>;

/// Minkowski bilinear form <a,b> = -a0*b0 + a1*b1 + ... + ad*bd.
double minkowski_dot(const Vec& a, const Vec& b);

/// acosh(1 + t) for t >= 0 without cancellation near t = 0.
double acosh1p(double t);

/// Surface area O_{d-1} of the unit sphere S^{d-1} in R^d.
double sphere_surface(int d);

/// A point of H^d on the upper sheet of <x,x> = -1 in Minkowski space.
/// The Poincare ball is supported as an I/O chart only.
struct Point {
    Vec x;  // size d+1, x[0] = cosh(dist to origin)

    int dim() const { return static_cast<int>(x.size()) - 1; }

    static Point origin(int d);
    static Point from_hyperboloid(Vec coords);        // validates the sheet
    static Point from_ball(const Vec& ball_coords);   // |b| < 1
    static Point from_polar(double rho, const Vec& direction);  // unit direction in R^d
    Vec to_ball() const;
};

/// Hyperbolic distance acosh(-<x,y>), evaluated through the Minkowski norm
/// of the difference so nearby points do not cancel.
double dist(const Point& a, const Point& b);

/// Reference distance in Poincare ball coordinates,
/// acosh(1 + 2|x-y|^2 / ((1-|x|^2)(1-|y|^2))).
double dist_ball_chart(const Vec& bx, const Vec& by);

/// Complete geodesic, stored re-based at its closest point to the origin:
/// p = a(L), v the unit tangent there (v[0] ~ 0), gamma(t) = cosh(t) p + sinh(t) v.
struct Geodesic {
    Vec p;       // foot a(L)
    Vec v;       // unit tangent at the foot
    double rho;  // d(o, L)

    int dim() const { return static_cast<int>(p.size()) - 1; }
    Vec point_at(double t) const;
    Point foot() const { return Point::from_hyperboloid(p); }

    /// Line with foot at distance rho in direction n, tangent direction m
    /// (unit vectors in R^d, m orthogonal to n unless rho == 0).
    static Geodesic from_foot(double rho, const Vec& n, const Vec& m);
    static Geodesic through(const Point& a, const Point& b);
    /// From any base point p on the line and unit tangent v; re-bases at the foot.
    static Geodesic from_base(Vec p, Vec v);
};

struct PointLineDist {
    double t_star;  // arclength of the nearest point from the base point
    double d;
};

/// Closed form: cosh d = sqrt(<x,p>^2 - <x,v>^2), minimizing -<x,gamma(t)>.
PointLineDist dist_point_geodesic(const Point& x, const Geodesic& line);

/// Distance between two complete geodesics; 0 when they meet or are
/// asymptotic. Separations below ~1e-6 fall inside the clamp of the closed
/// form and report as 0.
double dist_geodesics(const Geodesic& a, const Geodesic& b);

/// cosh^2 of dist_geodesics; no roots or acosh, for adjacency hot loops.
double cosh_sq_dist_geodesics(const Geodesic& a, const Geodesic& b);

/// Side c from sides a, b and the included angle gamma (first cosine rule).
double cosh_rule_side(double a, double b, double gamma);

/// Triangle solved from two sides and the included angle; angles in [0, pi].
struct Triangle {
    double a, b, c;
    double alpha, beta, gamma;

    static Triangle from_sas(double a, double b, double gamma);
};

/// Hyperbolic volume of B(o, r); closed form for d = 2, 3, quadrature above.
double ball_volume(int d, double r);

/// Euclidean (d-1)-volume of the boundary cap of angular radius theta,
/// (O_{d-1}/2) * I_{sin^2 theta}((d-1)/2, 1/2). Requires theta in [0, pi/2].
double cap_area(double theta, int d);

/// Minkowski-orthogonal matrix acting on H^d.
struct Isometry {
    int d;
    std::vector<double> m;  // (d+1) x (d+1), row-major

    Vec apply_vec(const Vec& x) const;
    Point operator()(const Point& pt) const;
    Geodesic operator()(const Geodesic& line) const;
    Isometry compose(const Isometry& other) const;  // this after other

    static Isometry identity(int d);
    static Isometry boost_axis(int d, double rapidity);        // along axis 1
    static Isometry rotation(int d, const std::vector<double>& q);  // spatial d x d block
};

/// Random rotation * boost * rotation; rapidity uniform in [0, max_rapidity].
Isometry random_isometry(RngStream& rng, int d, double max_rapidity = 3.0);

Vec random_unit_vector(RngStream& rng, int d);
Vec random_unit_vector_orthogonal(RngStream& rng, const Vec& n);

/// Radius with density proportional to sinh^{d-1} on [r_lo, r_hi]
/// (volume-uniform radial law).
double sample_radius(RngStream& rng, int d, double r_lo, double r_hi);

/// Point uniform in B(o, r) with respect to hyperbolic volume.
Point sample_point_in_ball(RngStream& rng, int d, double r);

}  // namespace hypcyl
