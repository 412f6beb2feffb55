#include "hypcyl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>

namespace hypcyl {

namespace {

constexpr double kSheetTol = 1e-9;

void check_same_dim(int a, int b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

double spatial_norm(const Vec& x) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * x[i];
    return std::sqrt(s);
}

}  // namespace

double minkowski_dot(const Vec& a, const Vec& b) {
    double s = -a[0] * b[0];
    for (std::size_t i = 1; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double acosh1p(double t) {
    if (t < 0.0) t = 0.0;
    return std::log1p(t + std::sqrt(t * (t + 2.0)));
}

double sphere_surface(int d) {
    if (d < 1) throw std::invalid_argument("sphere_surface: d >= 1 required");
    return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

Point Point::origin(int d) {
    if (d < 2) throw std::invalid_argument("Point: d >= 2 required");
    Vec x(d + 1, 0.0);
    x[0] = 1.0;
    return Point{std::move(x)};
}

Point Point::from_hyperboloid(Vec coords) {
    if (coords.size() < 3) throw std::invalid_argument("Point: d >= 2 required");
    if (coords[0] <= 0.0) throw std::invalid_argument("Point: not on the upper sheet");
    Point pt{std::move(coords)};
    const double q = minkowski_dot(pt.x, pt.x);
    if (std::fabs(q + 1.0) > kSheetTol * std::max(1.0, pt.x[0] * pt.x[0]))
        throw std::invalid_argument("Point: coordinates off the unit hyperboloid");
    return pt;
}

Point Point::from_ball(const Vec& b) {
    const int d = static_cast<int>(b.size());
    if (d < 2) throw std::invalid_argument("Point::from_ball: d >= 2 required");
    double s = 0.0;
    for (double c : b) s += c * c;
    if (s >= 1.0) throw std::invalid_argument("Point::from_ball: |b| must be < 1");
    Vec x(d + 1);
    const double inv = 1.0 / (1.0 - s);
    x[0] = (1.0 + s) * inv;
    for (int i = 0; i < d; ++i) x[i + 1] = 2.0 * b[i] * inv;
    return Point{std::move(x)};
}

Point Point::from_polar(double rho, const Vec& n) {
    const int d = static_cast<int>(n.size());
    if (d < 2) throw std::invalid_argument("Point::from_polar: d >= 2 required");
    if (rho < 0.0) throw std::invalid_argument("Point::from_polar: rho >= 0 required");
    Vec x(d + 1);
    x[0] = std::cosh(rho);
    const double sh = std::sinh(rho);
    for (int i = 0; i < d; ++i) x[i + 1] = sh * n[i];
    return Point{std::move(x)};
}

Vec Point::to_ball() const {
    const int d = dim();
    Vec b(d);
    const double inv = 1.0 / (1.0 + x[0]);
    for (int i = 0; i < d; ++i) b[i] = x[i + 1] * inv;
    return b;
}

double dist(const Point& a, const Point& b) {
    check_same_dim(a.dim(), b.dim(), "dist");
    // <x-y, x-y> = -2 - 2<x,y>, so q = <x-y,x-y>/2 = -<x,y> - 1 >= 0.
    double q = 0.0;
    {
        const double d0 = a.x[0] - b.x[0];
        q = -d0 * d0;
        for (std::size_t i = 1; i < a.x.size(); ++i) {
            const double di = a.x[i] - b.x[i];
            q += di * di;
        }
        q *= 0.5;
    }
    if (q < -1e-6 * std::max(1.0, a.x[0] * b.x[0]))
        throw std::invalid_argument("dist: inputs not on the hyperboloid");
    return acosh1p(q);
}

double dist_ball_chart(const Vec& bx, const Vec& by) {
    if (bx.size() != by.size()) throw std::invalid_argument("dist_ball_chart: dimension mismatch");
    double d2 = 0.0, nx = 0.0, ny = 0.0;
    for (std::size_t i = 0; i < bx.size(); ++i) {
        const double di = bx[i] - by[i];
        d2 += di * di;
        nx += bx[i] * bx[i];
        ny += by[i] * by[i];
    }
    if (nx >= 1.0 || ny >= 1.0) throw std::invalid_argument("dist_ball_chart: points outside the ball");
    return acosh1p(2.0 * d2 / ((1.0 - nx) * (1.0 - ny)));
}

Vec Geodesic::point_at(double t) const {
    const double c = std::cosh(t), s = std::sinh(t);
    Vec out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = c * p[i] + s * v[i];
    return out;
}

Geodesic Geodesic::from_foot(double rho, const Vec& n, const Vec& m) {
    const int d = static_cast<int>(n.size());
    if (d < 2 || m.size() != n.size())
        throw std::invalid_argument("Geodesic::from_foot: bad directions");
    if (rho < 0.0) throw std::invalid_argument("Geodesic::from_foot: rho >= 0 required");
    Vec p(d + 1), v(d + 1);
    p[0] = std::cosh(rho);
    v[0] = 0.0;
    const double sh = std::sinh(rho);
    for (int i = 0; i < d; ++i) {
        p[i + 1] = sh * n[i];
        v[i + 1] = m[i];
    }
    Geodesic g{std::move(p), std::move(v), rho};
    return g;
}

Geodesic Geodesic::from_base(Vec p, Vec v) {
    if (p.size() != v.size() || p.size() < 3)
        throw std::invalid_argument("Geodesic::from_base: bad inputs");
    // Normalize the frame: p on the sheet, v unit and Minkowski-orthogonal to p.
    {
        const double np = minkowski_dot(p, p);
        if (np >= 0.0) throw std::invalid_argument("Geodesic::from_base: p not timelike");
        const double s = 1.0 / std::sqrt(-np);
        for (auto& c : p) c *= s;
        const double pv = minkowski_dot(v, p);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += pv * p[i];
        const double nv = minkowski_dot(v, v);
        if (nv <= 0.0) throw std::invalid_argument("Geodesic::from_base: v not spacelike");
        const double sv = 1.0 / std::sqrt(nv);
        for (auto& c : v) c *= sv;
    }
    // Slide the base point to the foot: t* = atanh(-v0/p0). |v0| < p0 holds
    // on the sheet; the clamp guards rounding at extreme base points.
    const double a = p[0], b = v[0];
    const double th = std::clamp(-b / a, -1.0 + 1e-16, 1.0 - 1e-16);
    const double t = 0.5 * std::log((1.0 + th) / (1.0 - th));
    const double c = std::cosh(t), s = std::sinh(t);
    Vec fp(p.size()), fv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        fp[i] = c * p[i] + s * v[i];
        fv[i] = s * p[i] + c * v[i];
    }
    // rho from the spatial part of the foot (stable for small rho).
    const double rho = std::asinh(spatial_norm(fp));
    return Geodesic{std::move(fp), std::move(fv), rho};
}

Geodesic Geodesic::through(const Point& a, const Point& b) {
    check_same_dim(a.dim(), b.dim(), "Geodesic::through");
    const double c = minkowski_dot(a.x, b.x);  // <= -1
    if (c > -1.0 - 1e-14)
        throw std::invalid_argument("Geodesic::through: points coincide");
    Vec v(b.x.size());
    const double nrm = std::sqrt(c * c - 1.0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (b.x[i] + c * a.x[i]) / nrm;
    return from_base(a.x, std::move(v));
}

PointLineDist dist_point_geodesic(const Point& x, const Geodesic& line) {
    check_same_dim(x.dim(), line.dim(), "dist_point_geodesic");
    const double A = -minkowski_dot(x.x, line.p);  // cosh of dist to base point
    const double B = -minkowski_dot(x.x, line.v);
    if (A < 1.0 - 1e-6) throw std::invalid_argument("dist_point_geodesic: invalid point");
    const double th = -B / A;
    PointLineDist out;
    out.t_star = 0.5 * std::log((1.0 + th) / (1.0 - th));
    const double s2 = A * A - B * B;
    out.d = s2 <= 1.0 ? 0.0 : acosh1p(std::sqrt(s2) - 1.0);
    return out;
}

double cosh_sq_dist_geodesics(const Geodesic& g1, const Geodesic& g2) {
    // With a = <p1,p2>, b = <p1,v2>, c = <v1,p2>, e = <v1,v2>, the squared
    // cosh of the distance from gamma2(s) to L1 is
    //   (a C + b S)^2 - (c C + e S)^2 = alpha cosh(2s) + beta sinh(2s) + delta,
    // whose minimum over s is delta + sqrt(alpha^2 - beta^2).
    const double a = minkowski_dot(g1.p, g2.p);
    const double b = minkowski_dot(g1.p, g2.v);
    const double c = minkowski_dot(g1.v, g2.p);
    const double e = minkowski_dot(g1.v, g2.v);
    const double alpha = 0.5 * (a * a + b * b - c * c - e * e);
    const double beta = a * b - c * e;
    const double delta = 0.5 * (a * a - b * b - c * c + e * e);
    const double disc = alpha * alpha - beta * beta;
    return delta + (disc > 0.0 ? std::sqrt(disc) : 0.0);
}

double dist_geodesics(const Geodesic& g1, const Geodesic& g2) {
    check_same_dim(g1.dim(), g2.dim(), "dist_geodesics");
    const double a = minkowski_dot(g1.p, g2.p);
    const double b = minkowski_dot(g1.p, g2.v);
    const double c = minkowski_dot(g1.v, g2.p);
    const double e = minkowski_dot(g1.v, g2.v);
    const double alpha = 0.5 * (a * a + b * b - c * c - e * e);
    const double beta = a * b - c * e;
    const double delta = 0.5 * (a * a - b * b - c * c + e * e);
    const double disc = alpha * alpha - beta * beta;
    const double c2 = delta + (disc > 0.0 ? std::sqrt(disc) : 0.0);
    // Meeting or asymptotic lines reach c2 = 1; clamp within the rounding
    // noise of the coefficients. Distances below ~sqrt(eps * scale) are not
    // resolvable by this formula and report as 0.
    const double tol = 4e-12 * std::max(1.0, std::fabs(delta) + std::fabs(alpha));
    if (c2 <= 1.0 + tol) return 0.0;
    return acosh1p(std::sqrt(c2) - 1.0);
}

double cosh_rule_side(double a, double b, double gamma) {
    if (a < 0.0 || b < 0.0) throw std::invalid_argument("cosh_rule_side: sides >= 0 required");
    if (gamma < 0.0 || gamma > M_PI)
        throw std::invalid_argument("cosh_rule_side: gamma in [0, pi] required");
    // cosh c - 1 = (cosh(a-b) - 1) + sinh a sinh b (1 - cos gamma), both terms >= 0.
    const double sh = std::sinh(0.5 * (a - b));
    const double t1 = 2.0 * sh * sh;
    const double sg = std::sin(0.5 * gamma);
    const double t2 = std::sinh(a) * std::sinh(b) * 2.0 * sg * sg;
    return acosh1p(t1 + t2);
}

Triangle Triangle::from_sas(double a, double b, double gamma) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("Triangle: sides > 0 required");
    if (gamma <= 0.0 || gamma >= M_PI)
        throw std::invalid_argument("Triangle: gamma in (0, pi) required");
    Triangle t;
    t.a = a;
    t.b = b;
    t.gamma = gamma;
    t.c = cosh_rule_side(a, b, gamma);
    auto angle = [](double opp, double s1, double s2) {
        double cosv = (std::cosh(s1) * std::cosh(s2) - std::cosh(opp)) /
                      (std::sinh(s1) * std::sinh(s2));
        cosv = std::clamp(cosv, -1.0, 1.0);
        return std::acos(cosv);
    };
    t.alpha = angle(a, b, t.c);
    t.beta = angle(b, a, t.c);
    return t;
}

double ball_volume(int d, double r) {
    if (d < 2) throw std::invalid_argument("ball_volume: d >= 2 required");
    if (r < 0.0) throw std::invalid_argument("ball_volume: r >= 0 required");
    if (r == 0.0) return 0.0;
    const double surface = sphere_surface(d);
    if (d == 2) return surface * (std::cosh(r) - 1.0);
    if (d == 3) return surface * (0.25 * std::sinh(2.0 * r) - 0.5 * r);
    auto integrand = [d](double rho) { return std::pow(std::sinh(rho), d - 1); };
    const double integral = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, 0.0, r, 12, 1e-12);
    return surface * integral;
}

double cap_area(double theta, int d) {
    if (d < 2) throw std::invalid_argument("cap_area: d >= 2 required");
    if (theta < 0.0 || theta > M_PI / 2.0)
        throw std::invalid_argument("cap_area: theta in [0, pi/2] required");
    if (theta == 0.0) return 0.0;
    const double s = std::sin(theta);
    const double x = s * s;  // 2h - h^2 with h = 1 - cos(theta)
    return 0.5 * sphere_surface(d) * boost::math::ibeta(0.5 * (d - 1), 0.5, x);
}

Vec Isometry::apply_vec(const Vec& x) const {
    const int n = d + 1;
    Vec y(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += m[i * n + j] * x[j];
        y[i] = s;
    }
    return y;
}

Point Isometry::operator()(const Point& pt) const {
    Vec y = apply_vec(pt.x);
    const double q = minkowski_dot(y, y);
    const double s = 1.0 / std::sqrt(-q);
    for (auto& c : y) c *= s;
    return Point{std::move(y)};
}

Geodesic Isometry::operator()(const Geodesic& line) const {
    return Geodesic::from_base(apply_vec(line.p), apply_vec(line.v));
}

Isometry Isometry::compose(const Isometry& other) const {
    const int n = d + 1;
    Isometry out = identity(d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += m[i * n + k] * other.m[k * n + j];
            out.m[i * n + j] = s;
        }
    return out;
}

Isometry Isometry::identity(int d) {
    Isometry iso;
    iso.d = d;
    iso.m.assign(static_cast<std::size_t>(d + 1) * (d + 1), 0.0);
    for (int i = 0; i <= d; ++i) iso.m[i * (d + 1) + i] = 1.0;
    return iso;
}

Isometry Isometry::boost_axis(int d, double rapidity) {
    Isometry iso = identity(d);
    const int n = d + 1;
    iso.m[0 * n + 0] = std::cosh(rapidity);
    iso.m[0 * n + 1] = std::sinh(rapidity);
    iso.m[1 * n + 0] = std::sinh(rapidity);
    iso.m[1 * n + 1] = std::cosh(rapidity);
    return iso;
}

Isometry Isometry::rotation(int d, const std::vector<double>& q) {
    if (q.size() != static_cast<std::size_t>(d) * d)
        throw std::invalid_argument("Isometry::rotation: q must be d x d");
    Isometry iso = identity(d);
    const int n = d + 1;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) iso.m[(i + 1) * n + (j + 1)] = q[i * d + j];
    return iso;
}

namespace {

std::vector<double> random_orthogonal(RngStream& rng, int d) {
    // Gram-Schmidt on a Gaussian matrix; rows are the basis.
    std::vector<double> q(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        for (;;) {
            for (int j = 0; j < d; ++j) q[i * d + j] = rng.normal();
            for (int k = 0; k < i; ++k) {
                double dot = 0.0;
                for (int j = 0; j < d; ++j) dot += q[i * d + j] * q[k * d + j];
                for (int j = 0; j < d; ++j) q[i * d + j] -= dot * q[k * d + j];
            }
            double nrm = 0.0;
            for (int j = 0; j < d; ++j) nrm += q[i * d + j] * q[i * d + j];
            if (nrm > 1e-12) {
                nrm = 1.0 / std::sqrt(nrm);
                for (int j = 0; j < d; ++j) q[i * d + j] *= nrm;
                break;
            }
        }
    }
    return q;
}

}  // namespace

Isometry random_isometry(RngStream& rng, int d, double max_rapidity) {
    const Isometry r1 = Isometry::rotation(d, random_orthogonal(rng, d));
    const Isometry b = Isometry::boost_axis(d, rng.uniform(0.0, max_rapidity));
    const Isometry r2 = Isometry::rotation(d, random_orthogonal(rng, d));
    return r1.compose(b.compose(r2));
}

Vec random_unit_vector(RngStream& rng, int d) {
    Vec n(d);
    for (;;) {
        double nrm = 0.0;
        for (int i = 0; i < d; ++i) {
            n[i] = rng.normal();
            nrm += n[i] * n[i];
        }
        if (nrm > 1e-12) {
            nrm = 1.0 / std::sqrt(nrm);
            for (auto& c : n) c *= nrm;
            return n;
        }
    }
}

Vec random_unit_vector_orthogonal(RngStream& rng, const Vec& n) {
    const int d = static_cast<int>(n.size());
    if (d == 2) {
        // Unique direction up to sign; the line does not depend on the choice.
        return Vec{-n[1], n[0]};
    }
    Vec m(d);
    for (;;) {
        double dot = 0.0;
        for (int i = 0; i < d; ++i) {
            m[i] = rng.normal();
            dot += m[i] * n[i];
        }
        double nrm = 0.0;
        for (int i = 0; i < d; ++i) {
            m[i] -= dot * n[i];
            nrm += m[i] * m[i];
        }
        if (nrm > 1e-12) {
            nrm = 1.0 / std::sqrt(nrm);
            for (auto& c : m) c *= nrm;
            return m;
        }
    }
}

double sample_radius(RngStream& rng, int d, double r_lo, double r_hi) {
    if (!(r_lo >= 0.0 && r_hi > r_lo)) throw std::invalid_argument("sample_radius: bad range");
    if (d == 2) {
        const double lo = std::cosh(r_lo), hi = std::cosh(r_hi);
        return std::acosh(lo + rng.uniform() * (hi - lo));
    }
    // Rejection from the uniform proposal; sinh^{d-1} is increasing.
    const double peak = std::pow(std::sinh(r_hi), d - 1);
    for (;;) {
        const double t = rng.uniform(r_lo, r_hi);
        if (rng.uniform() * peak <= std::pow(std::sinh(t), d - 1)) return t;
    }
}

Point sample_point_in_ball(RngStream& rng, int d, double r) {
    const double rho = sample_radius(rng, d, 0.0, r);
    return Point::from_polar(rho, random_unit_vector(rng, d));
}

}  // namespace hypcyl
