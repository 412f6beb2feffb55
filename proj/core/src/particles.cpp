#include "hypcyl/particles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hypcyl/line_measure.hpp"

namespace hypcyl {

std::uint64_t ParticleGeneration::count_in(double a, double b) const {
    const auto lo = std::lower_bound(types.begin(), types.end(), a);
    const auto hi = std::upper_bound(types.begin(), types.end(), b);
    return static_cast<std::uint64_t>(hi - lo);
}

std::vector<double> sample_offspring_mu(RngStream& rng, double x, double u, double cap) {
    if (x < 0.0 || u < 0.0) throw std::invalid_argument("sample_offspring_mu: bad arguments");
    if (cap < x) throw std::invalid_argument("sample_offspring_mu: cap >= x required");
    std::vector<double> out;
    if (u == 0.0) return out;
    // Backward of the parent: intensity u e^{y-x} on [0, x).
    const double back_mass = u * (1.0 - std::exp(-x));
    if (back_mass > 0.0) {
        const long long nb = rng.poisson(back_mass);
        const double emx = std::exp(-x);
        for (long long i = 0; i < nb; ++i) {
            const double y = x + std::log(emx + rng.uniform_pos() * (1.0 - emx));
            out.push_back(std::max(0.0, y));
        }
    }
    // Ahead of the parent: homogeneous rate u on [x, cap].
    const long long nf = rng.poisson(u * (cap - x));
    for (long long i = 0; i < nf; ++i) out.push_back(rng.uniform(x, cap));
    std::sort(out.begin(), out.end());
    return out;
}

double mu_bin(double u, double x, int k) {
    if (k < 0 || x < 0.0 || u < 0.0) throw std::invalid_argument("mu_bin: bad arguments");
    if (x <= k) return u;
    if (x >= k + 1) return u * std::exp(k + 1.0 - x) * (1.0 - std::exp(-1.0));
    return u * ((k + 1.0 - x) + (1.0 - std::exp(k - x)));
}

namespace {

std::vector<ParticleGeneration> run_particle_process(
    RngStream& rng, const ZetaOptions& opts,
    const std::function<std::vector<double>(RngStream&, double, double)>& sampler) {
    if (opts.cap_delta < 0.0) throw std::invalid_argument("particle process: cap_delta >= 0");
    if (opts.n_gens < 0) throw std::invalid_argument("particle process: n_gens >= 0");
    const double cap = opts.R + opts.cap_delta;
    std::vector<ParticleGeneration> gens;
    gens.reserve(opts.n_gens + 1);
    gens.push_back(ParticleGeneration{{0.0}, 0, 0.0});
    for (int g = 1; g <= opts.n_gens; ++g) {
        const auto& parents = gens.back().types;
        ParticleGeneration next;
        next.generation_index = g;
        for (double x : parents) {
            auto kids = sampler(rng, x, cap);
            next.types.insert(next.types.end(), kids.begin(), kids.end());
            if (next.types.size() > opts.pop_cap)
                throw std::runtime_error(
                    "particle process: population cap exceeded (supercritical blow-up)");
        }
        std::stable_sort(next.types.begin(), next.types.end());
        // First-order bound on the expected [0,R] mass lost to the cap: each
        // parent spawns children above cap at rate u, and a child of type
        // z > cap would contribute at most u e^{R-z} expected children in
        // [0,R]; integrating gives u^2 e^{R-cap} per parent.
        next.truncated_mass =
            static_cast<double>(parents.size()) * opts.u * opts.u * std::exp(-opts.cap_delta);
        gens.push_back(std::move(next));
    }
    return gens;
}

}  // namespace

std::vector<ParticleGeneration> simulate_zeta(RngStream& rng, const ZetaOptions& opts) {
    return run_particle_process(rng, opts, [&opts](RngStream& r, double x, double cap) {
        return sample_offspring_mu(r, x, opts.u, cap);
    });
}

OffspringKernel make_kernel(OffspringKernel kernel) {
    if (kernel.atom_at_zero)
        throw std::invalid_argument("OffspringKernel: atom at type 0 not supported");
    if (!kernel.bin_intensities)
        throw std::invalid_argument("OffspringKernel: bin_intensities required");
    return kernel;
}

OffspringKernel mu_kernel(double u) {
    OffspringKernel k;
    k.label = "mu";
    k.bin_intensities = [u](double x, int k_max) {
        std::vector<double> bins(k_max + 1);
        for (int i = 0; i <= k_max; ++i) bins[i] = mu_bin(u, x, i);
        return bins;
    };
    k.sample = [u](RngStream& rng, double x, double cap) {
        return sample_offspring_mu(rng, x, u, cap);
    };
    return make_kernel(std::move(k));
}

OffspringKernel scaled_mu_kernel(double u, double factor) {
    if (factor < 0.0) throw std::invalid_argument("scaled_mu_kernel: factor >= 0 required");
    OffspringKernel k;
    k.label = "mu*" + std::to_string(factor);
    k.bin_intensities = [u, factor](double x, int k_max) {
        std::vector<double> bins(k_max + 1);
        for (int i = 0; i <= k_max; ++i) bins[i] = factor * mu_bin(u, x, i);
        return bins;
    };
    // factor * mu_{x,u} equals mu_{x, factor u}, so the canonical sampler at
    // the scaled intensity is exact.
    const double su = factor * u;
    k.sample = [su](RngStream& rng, double x, double cap) {
        return sample_offspring_mu(rng, x, su, cap);
    };
    return make_kernel(std::move(k));
}

OffspringKernel tau_kernel(int d, double u, std::uint64_t master_seed, std::uint64_t n_mc) {
    OffspringKernel k;
    k.label = "tau";
    k.bin_intensities = [d, u, master_seed, n_mc](double x, int k_max) {
        RngStream rng(master_seed, std::bit_cast<std::uint64_t>(x));
        const auto bins = estimate_tau_bins(rng, d, u, x, k_max, n_mc);
        std::vector<double> out(bins.size());
        for (std::size_t i = 0; i < bins.size(); ++i) out[i] = bins[i].mean;
        return out;
    };
    return make_kernel(std::move(k));
}

double kernel_domination_constant(const OffspringKernel& nu, double u, int k_max, int l_max,
                                  int grid_pts, double cell_width) {
    if (u <= 0.0) throw std::invalid_argument("kernel_domination_constant: u > 0 required");
    if (k_max < 0 || l_max < 0 || grid_pts < 1 || cell_width <= 0.0)
        throw std::invalid_argument("kernel_domination_constant: bad grids");
    double c_hat = 0.0;
    for (int l = 0; l <= l_max; ++l) {
        std::vector<double> sup_nu(k_max + 1, 0.0);
        std::vector<double> inf_mu(k_max + 1, std::numeric_limits<double>::infinity());
        for (int j = 1; j <= grid_pts; ++j) {
            const double x = (l + static_cast<double>(j) / grid_pts) * cell_width;
            const auto nu_bins = nu.bin_intensities(x, k_max);
            for (int k = 0; k <= k_max; ++k) {
                if (!std::isfinite(nu_bins[k]))
                    throw std::runtime_error("kernel_domination_constant: non-finite bin");
                sup_nu[k] = std::max(sup_nu[k], nu_bins[k]);
                inf_mu[k] = std::min(inf_mu[k], mu_bin(u, x, k));
            }
        }
        for (int k = 0; k <= k_max; ++k) {
            if (inf_mu[k] <= 0.0)
                throw std::runtime_error("kernel_domination_constant: zero denominator bin");
            c_hat = std::max(c_hat, sup_nu[k] / inf_mu[k]);
        }
    }
    return c_hat;
}

std::vector<ParticleGeneration> simulate_kernel(RngStream& rng, const OffspringKernel& nu,
                                                const ZetaOptions& opts) {
    if (!nu.sample) throw std::invalid_argument("simulate_kernel: kernel has no sampler");
    return run_particle_process(rng, opts, nu.sample);
}

std::vector<Estimate> estimate_tau_bins(RngStream& rng, int d, double u, double x, int l_max,
                                        std::uint64_t n) {
    if (x < 0.0 || u < 0.0 || l_max < 0 || n == 0)
        throw std::invalid_argument("estimate_tau_bins: bad arguments");
    const double window_r = l_max + 2.0;
    const Vec n1 = [&] { Vec v(d, 0.0); v[0] = 1.0; return v; }();
    const Vec n2 = [&] { Vec v(d, 0.0); v[1] = 1.0; return v; }();
    const Geodesic parent = Geodesic::from_foot(x, n1, n2);
    const double thresh = std::cosh(2.0 + 1e-9);
    const double thresh_sq = thresh * thresh;

    std::vector<std::uint64_t> counts(l_max + 1, 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        const Geodesic line = sample_line_hitting_ball(rng, d, window_r);
        if (line.rho > l_max + 1.0) continue;
        if (cosh_sq_dist_geodesics(line, parent) > thresh_sq) continue;
        const int l = line.rho <= 0.0 ? 0 : static_cast<int>(std::ceil(line.rho)) - 1;
        if (l >= 0 && l <= l_max) ++counts[l];
    }
    const double scale = u * measure_hitting_ball(d, window_r);
    std::vector<Estimate> out;
    out.reserve(l_max + 1);
    for (int l = 0; l <= l_max; ++l)
        out.push_back(binomial_estimate(counts[l], n, scale, rng.master_seed()));
    return out;
}

double tau_domination_constant(int d, double u, int k_max, int l_max, int grid_pts,
                               std::uint64_t n_mc, std::uint64_t master_seed) {
    if (u <= 0.0) throw std::invalid_argument("tau_domination_constant: u > 0 required");
    if (k_max < 0 || l_max < 0 || grid_pts < 1 || n_mc == 0)
        throw std::invalid_argument("tau_domination_constant: bad grids");
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(l_max + 1) * grid_pts);
    for (int l = 0; l <= l_max; ++l)
        for (int j = 1; j <= grid_pts; ++j)
            xs.push_back(l + static_cast<double>(j) / grid_pts);

    const Vec n1 = [&] { Vec v(d, 0.0); v[0] = 1.0; return v; }();
    const Vec n2 = [&] { Vec v(d, 0.0); v[1] = 1.0; return v; }();
    std::vector<Geodesic> parents;
    parents.reserve(xs.size());
    for (double x : xs) parents.push_back(Geodesic::from_foot(x, n1, n2));
    const double thresh = std::cosh(2.0 + 1e-9);
    const double thresh_sq = thresh * thresh;

    // One stratified line pool per child bin, sampled in the window that just
    // encloses the bin: event counts stay away from the one-hit regime even
    // in deep off-diagonal cells.
    std::vector<std::vector<double>> tau(xs.size(), std::vector<double>(k_max + 1, 0.0));
    for (int k = 0; k <= k_max; ++k) {
        RngStream rng(master_seed, static_cast<std::uint64_t>(k));
        const double window = k + 1.0;
        std::vector<std::uint64_t> counts(xs.size(), 0);
        for (std::uint64_t i = 0; i < n_mc; ++i) {
            const Geodesic line = sample_line_hitting_ball(rng, d, window);
            if (line.rho <= static_cast<double>(k)) continue;  // below the bin
            for (std::size_t pi = 0; pi < parents.size(); ++pi)
                if (cosh_sq_dist_geodesics(line, parents[pi]) <= thresh_sq) ++counts[pi];
        }
        const double scale = u * measure_hitting_ball(d, window) / static_cast<double>(n_mc);
        for (std::size_t pi = 0; pi < xs.size(); ++pi)
            tau[pi][k] = scale * static_cast<double>(counts[pi]);
    }

    double c_hat = 0.0;
    for (int l = 0; l <= l_max; ++l) {
        for (int k = 0; k <= k_max; ++k) {
            double sup_tau = 0.0;
            double inf_mu = std::numeric_limits<double>::infinity();
            for (int j = 0; j < grid_pts; ++j) {
                const std::size_t xi = static_cast<std::size_t>(l) * grid_pts + j;
                sup_tau = std::max(sup_tau, tau[xi][k]);
                inf_mu = std::min(inf_mu, mu_bin(u, xs[xi], k));
            }
            if (inf_mu <= 0.0)
                throw std::runtime_error("tau_domination_constant: zero denominator bin");
            if (!std::isfinite(sup_tau))
                throw std::runtime_error("tau_domination_constant: non-finite bin");
            c_hat = std::max(c_hat, sup_tau / inf_mu);
        }
    }
    return c_hat;
}

std::uint64_t EtaRealization::count_rho_leq(int generation, double R) const {
    if (generation < 1 || generation > static_cast<int>(generations.size()))
        throw std::invalid_argument("EtaRealization: bad generation index");
    const auto& gen = generations[generation - 1];
    std::uint64_t c = 0;
    for (const auto& line : gen)
        if (line.rho <= R) ++c;
    return c;
}

std::vector<std::uint64_t> EtaRealization::rho_bin_counts(int generation) const {
    if (generation < 1 || generation > static_cast<int>(generations.size()))
        throw std::invalid_argument("EtaRealization: bad generation index");
    std::vector<std::uint64_t> bins(static_cast<std::size_t>(std::ceil(window_r)) + 1, 0);
    for (const auto& line : generations[generation - 1]) {
        const int l = line.rho <= 0.0 ? 0 : static_cast<int>(std::ceil(line.rho)) - 1;
        if (l >= 0 && l < static_cast<int>(bins.size())) ++bins[l];
    }
    return bins;
}

EtaRealization simulate_eta(RngStream& rng, double u, int d, int n_gens, double window_r,
                            std::uint64_t line_cap) {
    if (n_gens < 0 || window_r <= 0.0) throw std::invalid_argument("simulate_eta: bad arguments");
    EtaRealization eta;
    eta.d = d;
    eta.u = u;
    eta.window_r = window_r;
    const Vec axis = [&] { Vec v(d, 0.0); v[0] = 1.0; return v; }();
    eta.root = Geodesic::from_foot(0.0, axis, axis);
    const double thresh = std::cosh(2.0 + 1e-9);
    const double thresh_sq = thresh * thresh;

    std::uint64_t total = 0;
    std::vector<const Geodesic*> parents{&eta.root};
    for (int g = 1; g <= n_gens && !parents.empty(); ++g) {
        std::vector<Geodesic> next;
        for (const Geodesic* parent : parents) {
            auto fresh = sample_poisson_line_process(rng, u, d, window_r);
            const std::size_t before = next.size();
            for (auto& line : fresh) {
                if (cosh_sq_dist_geodesics(line, *parent) <= thresh_sq)
                    next.push_back(std::move(line));
            }
            total += next.size() - before;
            if (total > line_cap)
                throw std::runtime_error("simulate_eta: line cap exceeded");
        }
        std::stable_sort(next.begin(), next.end(),
                         [](const Geodesic& a, const Geodesic& b) { return a.rho < b.rho; });
        eta.generations.push_back(std::move(next));
        parents.clear();
        for (const auto& line : eta.generations.back()) parents.push_back(&line);
    }
    // Pad so callers can index all requested generations even after die-out.
    while (static_cast<int>(eta.generations.size()) < n_gens) eta.generations.emplace_back();
    return eta;
}

GrowthComparison growth_rate_comparison(std::uint64_t master_seed, int workers, int d, double u,
                                        const std::vector<double>& R_grid, int gens,
                                        std::uint64_t reps, double margin) {
    if (R_grid.size() < 3)
        throw std::invalid_argument("growth_rate_comparison: need >= 3 grid points");
    if (!std::is_sorted(R_grid.begin(), R_grid.end()))
        throw std::invalid_argument("growth_rate_comparison: R_grid must be sorted");
    GrowthComparison out;
    out.R_grid = R_grid;
    out.margin = margin;

    for (std::size_t ri = 0; ri < R_grid.size(); ++ri) {
        const double R = R_grid[ri];
        const double window = R + 2.0;
        auto task = [=](RngStream& stream) {
            const EtaRealization eta = simulate_eta(stream, u, d, gens, window);
            double cumulative = 0.0;
            for (int g = 1; g <= gens; ++g)
                cumulative += static_cast<double>(eta.count_rho_leq(g, R));
            const double ambient =
                static_cast<double>(sample_poisson_line_process(stream, u, d, R).size());
            return std::vector<double>{cumulative, ambient};
        };
        auto est = replicate_vec(task, 2, reps, master_seed, workers, ri * reps);
        out.eta_counts.push_back(est[0]);
        out.ambient_counts.push_back(est[1]);
    }

    if (u == 0.0) {
        out.subexponential_vs_ambient = true;
        return out;
    }
    std::vector<double> log_eta, log_amb, w_eta, w_amb;
    for (std::size_t i = 0; i < R_grid.size(); ++i) {
        const auto& e = out.eta_counts[i];
        const auto& a = out.ambient_counts[i];
        if (e.mean <= 0.0 || a.mean <= 0.0)
            throw std::runtime_error(
                "growth_rate_comparison: zero counts; R range too small for a stable fit");
        log_eta.push_back(std::log(e.mean));
        log_amb.push_back(std::log(a.mean));
        w_eta.push_back(e.mean * e.mean / (e.se * e.se));
        w_amb.push_back(a.mean * a.mean / (a.se * a.se));
    }
    out.eta_fit = linear_fit(R_grid, log_eta, w_eta);
    out.ambient_fit = linear_fit(R_grid, log_amb, w_amb);
    out.subexponential_vs_ambient =
        out.eta_fit.slope + 1.645 * out.eta_fit.slope_se < (d - 1) - margin;
    return out;
}

}  // namespace hypcyl
