#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hypcyl/branching.hpp"
#include "hypcyl/monte_carlo.hpp"
#include "hypcyl/particles.hpp"
#include "helpers.hpp"

using namespace hypcyl;

TEST_CASE("offspring sampler intensities") {
    SUBCASE("u = 0 is sterile") {
        RngStream rng(51, 0);
        CHECK(sample_offspring_mu(rng, 1.0, 0.0, 10.0).empty());
    }

    SUBCASE("type 0 parent spawns a homogeneous process") {
        const double u = 1.0, cap = 10.0;
        double sum = 0.0;
        const int reps = 100000;
        for (int i = 0; i < reps; ++i) {
            RngStream rng(52, static_cast<std::uint64_t>(i));
            sum += static_cast<double>(sample_offspring_mu(rng, 0.0, u, cap).size());
        }
        const double mean = sum / reps;
        const double se = std::sqrt(u * cap / reps);
        CHECK(std::fabs(mean - u * cap) < 3.0 * se);
    }

    SUBCASE("type 2 parent: backward mass 1 - e^{-2}, forward mass 8") {
        const double target_back = 1.0 - std::exp(-2.0);
        const double target = target_back + 8.0;
        double total = 0.0, below = 0.0;
        const int reps = 100000;
        for (int i = 0; i < reps; ++i) {
            RngStream rng(53, static_cast<std::uint64_t>(i));
            for (double y : sample_offspring_mu(rng, 2.0, 1.0, 10.0)) {
                total += 1.0;
                if (y < 2.0) below += 1.0;
            }
        }
        const double mean = total / reps;
        CHECK(std::fabs(mean - target) < 3.0 * std::sqrt(target / reps));
        const double frac = below / total;
        const double target_frac = target_back / target;
        CHECK(std::fabs(frac - target_frac) <
              3.0 * std::sqrt(target_frac * (1 - target_frac) / total));
    }

    SUBCASE("cap below the parent type is rejected") {
        RngStream rng(54, 0);
        CHECK_THROWS_AS(sample_offspring_mu(rng, 5.0, 1.0, 4.0), std::invalid_argument);
    }
}

TEST_CASE("zeta generation 1 is Poisson(uR) on [0,R]") {
    const double u = 0.1, R = 2.0;
    ZetaOptions opts{u, R, 1};
    const int reps = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < reps; ++i) {
        RngStream rng(55, static_cast<std::uint64_t>(i));
        const auto gens = simulate_zeta(rng, opts);
        const double c = static_cast<double>(gens[1].count_in(0.0, R));
        sum += c;
        sum2 += c * c;
    }
    const double mean = sum / reps;
    const double var = sum2 / reps - mean * mean;
    const double se = std::sqrt(u * R / reps);
    CHECK(std::fabs(mean - u * R) < 3.0 * se);
    CHECK(std::fabs(var - u * R) < 4.0 * se);  // var(X)=mean for Poisson
}

TEST_CASE("zeta expected counts match F_n") {
    const double u = 0.1;
    ZetaOptions opts{u, 2.0, 3};
    auto task = [&opts](RngStream& rng) {
        const auto gens = simulate_zeta(rng, opts);
        return std::vector<double>{static_cast<double>(gens[1].count_in(0.0, opts.R)),
                                   static_cast<double>(gens[2].count_in(0.0, opts.R)),
                                   static_cast<double>(gens[3].count_in(0.0, opts.R))};
    };
    const auto est = replicate_vec(task, 3, 40000, 56);
    for (int n = 1; n <= 3; ++n) {
        const double target = F_n(n, opts.R, u);
        CHECK(std::fabs(est[n - 1].mean - target) < 3.0 * est[n - 1].se);
    }
    // Truncation accounting stays negligible at the default cap.
    RngStream rng(57, 0);
    const auto gens = simulate_zeta(rng, opts);
    for (const auto& g : gens) CHECK(g.truncated_mass < 1e-10);
}

TEST_CASE("zeta scaling in u") {
    // E[X^2] at (u, R) equals u^2 E[X^2] at u = 1 within joint error.
    const double R = 1.0;
    ZetaOptions small{0.1, R, 2};
    ZetaOptions unit{1.0, R, 2, 10.0};
    auto count2 = [R](const std::vector<ParticleGeneration>& gens) {
        return static_cast<double>(gens[2].count_in(0.0, R));
    };
    const Estimate at_u = replicate(
        [&](RngStream& rng) { return count2(simulate_zeta(rng, small)); }, 40000, 58);
    const Estimate at_1 = replicate(
        [&](RngStream& rng) { return count2(simulate_zeta(rng, unit)); }, 8000, 59);
    const double scaled = 0.01 * at_1.mean;
    const double joint_se = std::sqrt(at_u.se * at_u.se + 1e-4 * at_1.se * 1e-4 * at_1.se +
                                      0.01 * 0.01 * at_1.se * at_1.se);
    CHECK(std::fabs(at_u.mean - scaled) < 3.5 * joint_se);
}

TEST_CASE("zero intensity breeds nothing") {
    RngStream rng(49, 0);
    const auto gens = simulate_zeta(rng, ZetaOptions{0.0, 2.0, 3});
    REQUIRE(gens.size() == 4);
    CHECK(gens[0].types == std::vector<double>{0.0});
    for (int g = 1; g <= 3; ++g) CHECK(gens[g].types.empty());
}

TEST_CASE("population cap flags blow-up") {
    ZetaOptions opts{1.0, 2.0, 12, 40.0, 2000};
    RngStream rng(60, 0);
    CHECK_THROWS_AS(simulate_zeta(rng, opts), std::runtime_error);
}

TEST_CASE("mu bin closed form") {
    // Against direct quadrature of u e^{-(x-y)^+} over the bin.
    for (double x : {0.0, 0.4, 1.7, 3.2}) {
        for (int k : {0, 1, 3}) {
            double ref = 0.0;
            const int steps = 20000;
            for (int i = 0; i < steps; ++i) {
                const double y = k + (i + 0.5) / steps;
                ref += std::exp(-std::max(0.0, x - y)) / steps;
            }
            CHECK(mu_bin(2.0, x, k) == doctest::Approx(2.0 * ref).epsilon(1e-6));
        }
    }
}

TEST_CASE("kernel domination constants") {
    SUBCASE("canonical kernel sits in [1, e]") {
        const double c = kernel_domination_constant(mu_kernel(0.3), 0.3, 6, 6);
        CHECK(c >= 1.0);
        CHECK(c <= std::exp(1.0) + 1e-9);
    }

    SUBCASE("doubling the kernel doubles the constant") {
        const double c1 = kernel_domination_constant(mu_kernel(0.3), 0.3, 5, 5);
        const double c2 = kernel_domination_constant(scaled_mu_kernel(0.3, 2.0), 0.3, 5, 5);
        CHECK(c2 == doctest::Approx(2.0 * c1).epsilon(1e-12));
    }

    SUBCASE("refining the parent cells drives the constant to 1") {
        const double c1 = kernel_domination_constant(mu_kernel(0.3), 0.3, 4, 4, 16, 1.0);
        const double c2 = kernel_domination_constant(mu_kernel(0.3), 0.3, 4, 8, 16, 0.5);
        const double c3 = kernel_domination_constant(mu_kernel(0.3), 0.3, 4, 16, 16, 0.25);
        CHECK(c2 < c1);
        CHECK(c3 < c2);
        CHECK(c3 < 1.3);
    }

    SUBCASE("atom at zero is rejected") {
        OffspringKernel bad;
        bad.label = "bad";
        bad.atom_at_zero = true;
        bad.bin_intensities = [](double, int k_max) {
            return std::vector<double>(k_max + 1, 0.0);
        };
        CHECK_THROWS_AS(make_kernel(std::move(bad)), std::invalid_argument);
    }
}

TEST_CASE("generic kernel simulator") {
    SUBCASE("canonical kernel reproduces zeta distributionally") {
        // KS on generation-1 types, pooled across replications.
        std::vector<double> a, b;
        for (int i = 0; i < 4000; ++i) {
            RngStream r1(61, static_cast<std::uint64_t>(i));
            RngStream r2(62, static_cast<std::uint64_t>(i));
            ZetaOptions opts{0.3, 2.0, 1, 6.0};
            const auto za = simulate_zeta(r1, opts);
            const auto zb = simulate_kernel(r2, mu_kernel(0.3), opts);
            a.insert(a.end(), za[1].types.begin(), za[1].types.end());
            b.insert(b.end(), zb[1].types.begin(), zb[1].types.end());
        }
        // Two-sample KS.
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        double d = 0.0;
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] <= b[j]) ++i;
            else ++j;
            d = std::max(d, std::fabs(static_cast<double>(i) / a.size() -
                                      static_cast<double>(j) / b.size()));
        }
        const double ne = static_cast<double>(a.size()) * b.size() / (a.size() + b.size());
        CHECK(d < 1.628 / std::sqrt(ne));
    }

    SUBCASE("damped kernel obeys the domination bound") {
        const double u = 0.1, factor = 0.5;
        const OffspringKernel nu = scaled_mu_kernel(u, factor);
        const double c_hat = kernel_domination_constant(nu, u, 8, 8);
        ZetaOptions opts{u, 3.0, 3};
        auto task = [&](RngStream& rng) {
            const auto gens = simulate_kernel(rng, nu, opts);
            return std::vector<double>{static_cast<double>(gens[1].count_in(0.0, 1.0)),
                                       static_cast<double>(gens[2].count_in(0.0, 2.0)),
                                       static_cast<double>(gens[3].count_in(0.0, 3.0))};
        };
        const auto est = replicate_vec(task, 3, 30000, 63);
        CHECK(est[0].mean <= c_hat * F_n(1, 1.0, u) + 3.0 * est[0].se);
        CHECK(est[1].mean <= c_hat * c_hat * F_n(2, 2.0, u) + 3.0 * est[1].se);
        CHECK(est[2].mean <= c_hat * c_hat * c_hat * F_n(3, 3.0, u) + 3.0 * est[2].se);
    }
}

TEST_CASE("tau bin estimates") {
    SUBCASE("u = 0 zeroes every bin") {
        RngStream rng(64, 0);
        for (const auto& est : estimate_tau_bins(rng, 2, 0.0, 3.0, 4, 2000))
            CHECK(est.mean == 0.0);
    }

    SUBCASE("near parent: bins flat for l >= x") {
        RngStream rng(65, 0);
        const auto bins = estimate_tau_bins(rng, 2, 1.0, 1.0, 5, 400000);
        // No decay across l = 1..5: each within a mild factor of the others.
        double lo = 1e300, hi = 0.0;
        for (int l = 1; l <= 5; ++l) {
            CHECK(bins[l].mean > 0.0);
            lo = std::min(lo, bins[l].mean);
            hi = std::max(hi, bins[l].mean);
        }
        CHECK(hi / lo < 3.0);
    }

    SUBCASE("far parent: exponential shell decay") {
        RngStream rng(66, 0);
        const double x = 5.0;
        const auto bins = estimate_tau_bins(rng, 2, 1.0, x, 4, 1500000);
        // tau_x((l,l+1]) e^{(x-l)} bounded: compare l = 2 vs l = 4.
        const double s2 = bins[2].mean * std::exp(x - 2.0);
        const double s4 = bins[4].mean * std::exp(x - 4.0);
        CHECK(bins[4].mean > 0.0);
        const double joint = 3.0 * (bins[2].se * std::exp(x - 2.0) + bins[4].se * std::exp(x - 4.0));
        CHECK(std::fabs(s2 - s4) < joint + 0.5 * std::max(s2, s4));
    }
}

TEST_CASE("independent cylinder process") {
    SUBCASE("u = 0 leaves only the root") {
        RngStream rng(67, 0);
        const EtaRealization eta = simulate_eta(rng, 0.0, 2, 3, 4.0);
        CHECK(eta.generations.size() == 3);
        for (const auto& gen : eta.generations) CHECK(gen.empty());
    }

    SUBCASE("offspring cylinders touch their parents") {
        RngStream rng(68, 0);
        const EtaRealization eta = simulate_eta(rng, 0.15, 2, 3, 4.0);
        const std::vector<Geodesic>* parents = nullptr;
        for (int g = 0; g < 3; ++g) {
            const auto& gen = eta.generations[g];
            for (std::size_t k = 0; k < gen.size(); ++k) {
                bool touches = false;
                if (g == 0) {
                    touches = dist_geodesics(gen[k], eta.root) <= 2.0 + 1e-6;
                } else {
                    for (const auto& par : *parents)
                        if (dist_geodesics(gen[k], par) <= 2.0 + 1e-6) {
                            touches = true;
                            break;
                        }
                }
                CHECK(touches);
                if (k > 0) CHECK(gen[k - 1].rho <= gen[k].rho);  // sorted by rho
            }
            parents = &gen;
        }
    }

    SUBCASE("H_1 is dominated by c_hat F_1") {
        const double u = 0.05, R = 3.0;
        const double c_hat =
            kernel_domination_constant(tau_kernel(2, u, 690, 150000), u, 6, 6);
        const Estimate h1 = replicate(
            [&](RngStream& rng) {
                return static_cast<double>(simulate_eta(rng, u, 2, 1, R + 2.0).count_rho_leq(1, R));
            },
            4000, 69);
        CHECK(h1.mean <= c_hat * F_n(1, R, u) + 3.0 * h1.se);
    }
}

TEST_CASE("growth rate comparison") {
    SUBCASE("u = 0 declares rate zero") {
        const auto rep = growth_rate_comparison(70, 1, 2, 0.0, {2.0, 3.0, 4.0}, 2, 10);
        CHECK(rep.subexponential_vs_ambient);
    }

    SUBCASE("small u: eta rate below ambient rate") {
        const auto rep =
            growth_rate_comparison(71, 1, 2, 0.01, {2.0, 3.0, 4.0, 5.0, 6.0}, 3, 6000);
        CHECK(rep.subexponential_vs_ambient);
        CHECK(std::fabs(rep.ambient_fit.slope - 1.0) < 0.1);
        CHECK(rep.eta_fit.slope + 1.645 * rep.eta_fit.slope_se < 1.0);
    }

    SUBCASE("too few grid points error out") {
        CHECK_THROWS_AS(growth_rate_comparison(72, 1, 2, 0.01, {2.0, 3.0}, 2, 100),
                        std::invalid_argument);
    }
}
