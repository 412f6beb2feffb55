#include "hypcyl/net.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypcyl {

namespace {

// Centers kept sorted by distance from the origin so that a candidate only
// has to be checked against centers within +-spacing of its own radius.
class PackedSet {
public:
    explicit PackedSet(double spacing)
        : spacing_(spacing), cosh_spacing_(std::cosh(spacing)) {}

    std::size_t size() const { return rho_.size(); }

    // dist(candidate, every center) >= spacing (boundary ties allowed)?
    bool is_far(const Vec& x, double rho) const {
        const auto lo = std::lower_bound(rho_.begin(), rho_.end(), rho - spacing_);
        const auto hi = std::upper_bound(rho_.begin(), rho_.end(), rho + spacing_);
        const std::size_t i0 = static_cast<std::size_t>(lo - rho_.begin());
        const std::size_t i1 = static_cast<std::size_t>(hi - rho_.begin());
        for (std::size_t i = i0; i < i1; ++i) {
            if (-dot(coords_[i], x) < cosh_spacing_ - 1e-12) return false;
        }
        return true;
    }

    // Is some center within `radius` of x?
    bool is_covered(const Vec& x, double rho, double radius, double cosh_radius) const {
        const auto lo = std::lower_bound(rho_.begin(), rho_.end(), rho - radius);
        const auto hi = std::upper_bound(rho_.begin(), rho_.end(), rho + radius);
        const std::size_t i0 = static_cast<std::size_t>(lo - rho_.begin());
        const std::size_t i1 = static_cast<std::size_t>(hi - rho_.begin());
        for (std::size_t i = i0; i < i1; ++i) {
            if (-dot(coords_[i], x) <= cosh_radius + 1e-12) return true;
        }
        return false;
    }

    void insert(Vec x, double rho) {
        const auto it = std::lower_bound(rho_.begin(), rho_.end(), rho);
        const std::size_t pos = static_cast<std::size_t>(it - rho_.begin());
        rho_.insert(it, rho);
        coords_.insert(coords_.begin() + pos, std::move(x));
    }

    std::vector<Point> points() const {
        std::vector<Point> out;
        out.reserve(coords_.size());
        for (const auto& c : coords_) out.push_back(Point::from_hyperboloid(c));
        return out;
    }

private:
    double dot(const Vec& a, const Vec& b) const { return minkowski_dot(a, b); }

    double spacing_, cosh_spacing_;
    std::vector<double> rho_;
    std::vector<Vec> coords_;
};

PackedSet build_net(RngStream& rng, int d, double r_lo, double r_hi, double spacing,
                    const NetOptions& opts, bool seed_origin) {
    PackedSet set(spacing);
    if (seed_origin) set.insert(Point::origin(d).x, 0.0);

    auto candidate = [&](double& rho_out) {
        const double rho = sample_radius(rng, d, r_lo, r_hi);
        rho_out = rho;
        return Point::from_polar(rho, random_unit_vector(rng, d)).x;
    };

    // Packing phase: insert until the rejection streak says the set is
    // close to maximal.
    std::uint64_t streak = 0;
    while (streak < std::max<std::uint64_t>(1000, 3 * set.size())) {
        double rho;
        Vec x = candidate(rho);
        if (set.is_far(x, rho)) {
            set.insert(std::move(x), rho);
            streak = 0;
            if (set.size() > opts.max_centers)
                throw std::runtime_error("net: center budget exceeded");
        } else {
            ++streak;
        }
    }

    // Covering phase: any sampled point farther than `spacing` from every
    // center is itself a valid center; repeat until a full pass is clean.
    const double cosh_spacing = std::cosh(spacing);
    for (int pass = 0; pass < opts.max_verify_passes; ++pass) {
        std::uint64_t inserted = 0;
        for (std::uint64_t i = 0; i < opts.verify_samples; ++i) {
            double rho;
            Vec x = candidate(rho);
            if (!set.is_covered(x, rho, spacing, cosh_spacing)) {
                set.insert(std::move(x), rho);
                ++inserted;
                if (set.size() > opts.max_centers)
                    throw std::runtime_error("net: center budget exceeded");
            }
        }
        if (inserted == 0) return set;
    }
    throw std::runtime_error("net: covering did not stabilize within the pass budget");
}

}  // namespace

Net greedy_net(RngStream& rng, int d, double r, double spacing, const NetOptions& opts) {
    if (d < 2) throw std::invalid_argument("greedy_net: d >= 2 required");
    if (r <= 0.0 || spacing <= 0.0) throw std::invalid_argument("greedy_net: r, spacing > 0");
    Net net;
    net.d = d;
    net.window_r = r;
    net.packing = spacing;
    net.covering = spacing;
    net.centers = build_net(rng, d, 0.0, r, spacing, opts, /*seed_origin=*/true).points();
    return net;
}

std::vector<Point> shell_ball_centers(RngStream& rng, int d, double R, const NetOptions& opts) {
    if (d < 2) throw std::invalid_argument("shell_ball_centers: d >= 2 required");
    if (R < 1.0) throw std::invalid_argument("shell_ball_centers: R >= 1 required");
    const double lo = std::max(0.0, R - 0.5);
    const double hi = R + 1.5;
    PackedSet net = build_net(rng, d, lo, hi, 0.5, opts, /*seed_origin=*/false);

    std::vector<Point> out;
    out.reserve(net.size());
    for (const Point& pt : net.points()) {
        Vec n(pt.x.begin() + 1, pt.x.end());
        double nrm = 0.0;
        for (double c : n) nrm += c * c;
        nrm = 1.0 / std::sqrt(nrm);
        for (auto& c : n) c *= nrm;
        out.push_back(Point::from_polar(R, n));
    }
    return out;
}

}  // namespace hypcyl
