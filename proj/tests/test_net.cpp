#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hypcyl/line_measure.hpp"
#include "hypcyl/net.hpp"
#include "hypcyl/stats.hpp"

using namespace hypcyl;

TEST_CASE("tiny window collapses to the origin") {
    RngStream rng(21, 0);
    const Net net = greedy_net(rng, 2, 0.2, 0.5);
    CHECK(net.centers.size() == 1);
    CHECK(dist(net.centers[0], Point::origin(2)) < 1e-12);
}

TEST_CASE("net invariants: packing and covering") {
    RngStream rng(22, 0);
    const Net net = greedy_net(rng, 2, 3.0, 0.5);
    // Pairwise separation.
    for (std::size_t i = 0; i < net.centers.size(); ++i)
        for (std::size_t j = i + 1; j < net.centers.size(); ++j)
            CHECK(dist(net.centers[i], net.centers[j]) >= net.packing - 1e-9);
    // Fresh dense sample is covered.
    RngStream verify(4022, 1);
    for (int it = 0; it < 20000; ++it) {
        const Point z = sample_point_in_ball(verify, 2, 3.0);
        double best = 1e300;
        for (const auto& c : net.centers) best = std::min(best, dist(z, c));
        CHECK(best <= net.covering + 1e-6);
    }
}

TEST_CASE("cardinality sits between the volume-ratio bounds") {
    RngStream rng(23, 0);
    const Net net = greedy_net(rng, 2, 5.0, 0.5);
    const double n = static_cast<double>(net.centers.size());
    CHECK(n >= ball_volume(2, 5.0) / ball_volume(2, 1.0));
    CHECK(n <= ball_volume(2, 6.0) / ball_volume(2, 0.2));
}

TEST_CASE("log cardinality grows at rate d-1") {
    RngStream rng(24, 0);
    NetOptions light;
    light.verify_samples = 20000;
    std::vector<double> rs, logn;
    for (double r = 3.0; r <= 7.0; r += 1.0) {
        const Net net = greedy_net(rng, 2, r, 0.5, light);
        rs.push_back(r);
        logn.push_back(std::log(static_cast<double>(net.centers.size())));
    }
    const LinearFit fit = linear_fit(rs, logn);
    CHECK(std::fabs(fit.slope - 1.0) < 0.15);
}

TEST_CASE("shell ball centers") {
    RngStream rng(25, 0);
    NetOptions light;
    light.verify_samples = 20000;
    const double radii[3] = {4.0, 5.0, 6.0};
    std::vector<std::vector<Point>> centers;
    for (double R : radii) centers.push_back(shell_ball_centers(rng, 2, R, light));

    // Projection contract and exponential growth.
    for (const auto& pt : centers[0])
        CHECK(std::fabs(dist(pt, Point::origin(2)) - 4.0) <= 1e-9);
    const double ratio = static_cast<double>(centers[1].size()) /
                         static_cast<double>(centers[0].size());
    CHECK(ratio > std::exp(1.0) * 0.7);
    CHECK(ratio < std::exp(1.0) * 1.3);
    // Reported constant c with |centers| >= c e^{(d-1)R}.
    const double c_hat = static_cast<double>(centers[0].size()) / std::exp(4.0);
    CHECK(c_hat > 0.0);

    // A sampled line meets a bounded number of the 1/4-balls, uniformly in R.
    int worst[3] = {0, 0, 0};
    for (int idx = 0; idx < 3; ++idx) {
        const double R = radii[idx];
        RngStream lines(26, static_cast<std::uint64_t>(idx));
        for (int it = 0; it < 800; ++it) {
            const Geodesic line = sample_line_hitting_ball(lines, 2, R + 1.25);
            int hits = 0;
            for (const auto& c : centers[idx])
                if (dist_point_geodesic(c, line).d <= 0.25) ++hits;
            worst[idx] = std::max(worst[idx], hits);
        }
        CHECK(worst[idx] >= 1);
    }
    const int lo = std::min({worst[0], worst[1], worst[2]});
    const int hi = std::max({worst[0], worst[1], worst[2]});
    CHECK(hi <= 2 * lo + 2);
}
