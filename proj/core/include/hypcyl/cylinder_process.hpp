#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hypcyl/geometry.hpp"
#include "hypcyl/line_measure.hpp"
#include "hypcyl/monte_carlo.hpp"
#include "hypcyl/rng.hpp"

namespace hypcyl {

/// Windowed Poisson cylinder process: lines hitting B(o, window_r) with
/// radius-s cylinders around them.
struct CylinderProcessRealization {
    int d = 2;
    double u = 0.0;
    double window_r = 0.0;
    double s = 1.0;
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
    std::vector<Geodesic> lines;
};

CylinderProcessRealization realize(RngStream& rng, double u, int d, double window_r,
                                   double s = 1.0, double max_expected = kDefaultLineCap);

/// Cylinder-intersection graph: i ~ j iff dist(L_i, L_j) <= 2s (+1e-9 slack;
/// boundary ties are adjacent). Components by union-find.
struct ConnectivityGraph {
    int n_nodes = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adjacency;
    std::vector<int> component_labels;
    int n_components = 0;

    std::uint64_t largest_component_size() const;
};

ConnectivityGraph build_graph(const CylinderProcessRealization& real);

/// Minimal number of intermediate cylinders connecting i and j: BFS hops
/// minus one (adjacent pairs and i == j give 0); nullopt when disconnected.
std::optional<int> cdist(const ConnectivityGraph& graph, int i, int j);

/// Largest finite cdist over all pairs.
int diam_hat(const ConnectivityGraph& graph);

struct CoverQuery {
    bool covered = false;
    /// Set when x is closer than s to the window boundary, where coverage by
    /// out-of-window lines is unaccounted for.
    bool edge_warning = false;
};

CoverQuery covers_point(const CylinderProcessRealization& real, const Point& x);

/// Threshold u <= 2/mu(L_{B(o,s+1)}) under which the one-step connection
/// probability admits the two-sided exponential bound.
double small_intensity_threshold(int d, double s = 1.0);

struct OneStepConnect {
    double p = 0.0;       // 1 - exp(-u mu_hat)
    Estimate mu;          // measure of lines hitting both B(x,s+1) and B(y,s+1)
    bool mu_exact = false;  // coincident centers shortcut, no MC
};

/// Probability that B(x,1) and B(y,1) are joined by a single cylinder
/// (s = 1 convention, radius-2 hit regions).
OneStepConnect connect_prob_one_step(int d, double u, const Point& x, const Point& y,
                                     std::uint64_t n, RngStream& rng);

struct MStepConnectResult {
    Estimate p;
    double window_r = 0.0;
    double margin = 0.0;
    /// Finite-window estimate: connector chains through lines missing
    /// B(o, window_r) are not observable, so p is biased low for the
    /// infinite-volume event. Rerun at a larger margin to gauge the bias.
    bool window_truncated = true;
};

/// Fraction of realizations in which B(o,1) reaches B(y,1), d(o,y) = R,
/// through at most m cylinders of the windowed process.
MStepConnectResult estimate_connect_prob_msteps(std::uint64_t master_seed, int workers, int d,
                                                double u, double R, int m, double margin,
                                                std::uint64_t reps);

struct MarginSensitivity {
    MStepConnectResult at_margin;
    MStepConnectResult at_margin_plus_2;
    bool flagged = false;  // estimates differ by more than 2 combined stderr
};

/// Finite-window bias probe: the same estimate at margin and margin + 2.
MarginSensitivity msteps_margin_sensitivity(std::uint64_t master_seed, int workers, int d,
                                            double u, double R, int m, double margin,
                                            std::uint64_t reps);

/// Feet a(L) of all lines of the realization.
std::vector<Point> closest_point_process(const CylinderProcessRealization& real);

struct PhaseScanRow {
    double u = 0.0;
    std::uint64_t reps = 0;
    Estimate mean_components;
    Estimate largest_frac;   // largest component line fraction
    Estimate pair_conn;      // fraction of line pairs in one component
    Estimate single_component_frac;  // fraction of reps forming one component
};

std::vector<PhaseScanRow> phase_scan(std::uint64_t master_seed, int workers, int d,
                                     double window_r, const std::vector<double>& u_grid,
                                     std::uint64_t reps, double s = 1.0);

}  // namespace hypcyl
