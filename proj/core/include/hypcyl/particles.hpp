#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hypcyl/geometry.hpp"
#include "hypcyl/monte_carlo.hpp"
#include "hypcyl/rng.hpp"
#include "hypcyl/stats.hpp"

namespace hypcyl {

/// One generation of the particle process: sorted nonnegative types plus a
/// bound on the expected [0, R]-mass lost to the type cap in this step.
struct ParticleGeneration {
    std::vector<double> types;
    int generation_index = 0;
    double truncated_mass = 0.0;

    std::uint64_t count_in(double a, double b) const;
};

/// Offspring of a type-x parent under the canonical kernel
/// mu_x = u e^{-(x-y)^+} dy on [0, cap]: exponential tail behind the parent,
/// homogeneous rate u ahead of it. Types above cap are not produced.
std::vector<double> sample_offspring_mu(RngStream& rng, double x, double u, double cap);

/// Closed-form bin mass mu_x((k, k+1]).
double mu_bin(double u, double x, int k);

struct ZetaOptions {
    double u = 0.1;
    double R = 2.0;
    int n_gens = 4;
    double cap_delta = 40.0;  // cap = R + cap_delta
    std::uint64_t pop_cap = 1000000;
};

/// Particle process started from a single type-0 particle. Generation g of
/// the result is at index g (index 0 = {0}). Throws when a generation
/// exceeds pop_cap (supercritical blow-up guard).
std::vector<ParticleGeneration> simulate_zeta(RngStream& rng, const ZetaOptions& opts);

/// Offspring law given by per-parent bin intensities and a sampler. The
/// construction rejects kernels with an atom at type 0.
struct OffspringKernel {
    std::string label;
    bool atom_at_zero = false;
    /// nu_x((k, k+1]) for k = 0..k_max.
    std::function<std::vector<double>(double x, int k_max)> bin_intensities;
    /// Offspring types of a type-x parent, truncated at cap.
    std::function<std::vector<double>(RngStream&, double x, double cap)> sample;
};

OffspringKernel make_kernel(OffspringKernel kernel);  // validates
OffspringKernel mu_kernel(double u);
/// factor * mu; sampled by thinning the canonical sampler.
OffspringKernel scaled_mu_kernel(double u, double factor);
/// Geometric kernel tau_x of the independent cylinder process, with bin
/// masses estimated by window Monte Carlo (n_mc lines per parent type).
OffspringKernel tau_kernel(int d, double u, std::uint64_t master_seed, std::uint64_t n_mc);

/// Empirical domination constant: max over child bins k <= k_max and parent
/// cells (l w, (l+1) w], l <= l_max/w, of
///   sup_cell nu_x(bin) / inf_cell mu_x(bin),
/// with sup/inf over grid_pts points per cell. The denominator kernel is the
/// canonical mu at the same u.
double kernel_domination_constant(const OffspringKernel& nu, double u, int k_max, int l_max,
                                  int grid_pts = 16, double cell_width = 1.0);

/// simulate_zeta with an arbitrary kernel.
std::vector<ParticleGeneration> simulate_kernel(RngStream& rng, const OffspringKernel& nu,
                                                const ZetaOptions& opts);

/// Window Monte Carlo for tau_x((l, l+1]), l = 0..l_max: the mass of lines
/// whose cylinder touches c(L_x, 2) and whose foot distance lands in the
/// bin, estimated from lines sampled in B(o, l_max + 2).
std::vector<Estimate> estimate_tau_bins(RngStream& rng, int d, double u, double x, int l_max,
                                        std::uint64_t n);

/// kernel_domination_constant for nu = tau. Bin masses are estimated from
/// one stratified line pool per child bin (n_mc lines sampled in the window
/// B(o, k+1) enclosing bin k), shared across the grid_pts parent types per
/// cell, so every cell of the ratio grid is estimated away from the one-hit
/// regime.
double tau_domination_constant(int d, double u, int k_max, int l_max, int grid_pts,
                               std::uint64_t n_mc, std::uint64_t master_seed);

/// Independent cylinder process: a fixed root line through the origin, each
/// parent's offspring drawn from a fresh Poisson line process in the window
/// thinned to the lines whose cylinders touch the parent's.
struct EtaRealization {
    int d = 2;
    double u = 0.0;
    double window_r = 0.0;
    Geodesic root;
    std::vector<std::vector<Geodesic>> generations;  // index 0 = generation 1

    std::uint64_t count_rho_leq(int generation, double R) const;
    std::vector<std::uint64_t> rho_bin_counts(int generation) const;  // bins (l, l+1]
};

EtaRealization simulate_eta(RngStream& rng, double u, int d, int n_gens, double window_r,
                            std::uint64_t line_cap = 2000000);

struct GrowthComparison {
    std::vector<double> R_grid;
    std::vector<Estimate> eta_counts;      // cumulative eta lines hitting B(o,R)
    std::vector<Estimate> ambient_counts;  // plain process lines hitting B(o,R)
    LinearFit eta_fit;                     // slope of log mean vs R
    LinearFit ambient_fit;
    double margin = 0.0;
    bool subexponential_vs_ambient = false;  // eta rate < (d-1) - margin at 95%
};

/// Desk-scale growth comparison: exponential rate of cumulative eta counts
/// across R against the ambient line-count rate (d-1).
GrowthComparison growth_rate_comparison(std::uint64_t master_seed, int workers, int d, double u,
                                        const std::vector<double>& R_grid, int gens,
                                        std::uint64_t reps, double margin = 0.0);

}  // namespace hypcyl
