#include "hypcyl/cylinder_process.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace hypcyl {

namespace {

struct UnionFind {
    std::vector<int> parent, rank_;
    explicit UnionFind(int n) : parent(n), rank_(n, 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }
};

}  // namespace

CylinderProcessRealization realize(RngStream& rng, double u, int d, double window_r, double s,
                                   double max_expected) {
    if (s <= 0.0) throw std::invalid_argument("realize: s > 0 required");
    CylinderProcessRealization real;
    real.d = d;
    real.u = u;
    real.window_r = window_r;
    real.s = s;
    real.master_seed = rng.master_seed();
    real.stream_id = rng.stream_id();
    real.lines = sample_poisson_line_process(rng, u, d, window_r, max_expected);
    return real;
}

ConnectivityGraph build_graph(const CylinderProcessRealization& real) {
    const int n = static_cast<int>(real.lines.size());
    ConnectivityGraph g;
    g.n_nodes = n;
    g.adjacency.resize(n);
    const double thresh = std::cosh(2.0 * real.s + 1e-9);
    const double thresh_sq = thresh * thresh;
    UnionFind uf(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (cosh_sq_dist_geodesics(real.lines[i], real.lines[j]) <= thresh_sq) {
                g.edges.emplace_back(i, j);
                g.adjacency[i].push_back(j);
                g.adjacency[j].push_back(i);
                uf.unite(i, j);
            }
        }
    }
    g.component_labels.resize(n);
    std::vector<int> remap(n, -1);
    int next_label = 0;
    for (int i = 0; i < n; ++i) {
        const int root = uf.find(i);
        if (remap[root] < 0) remap[root] = next_label++;
        g.component_labels[i] = remap[root];
    }
    g.n_components = next_label;
    return g;
}

std::uint64_t ConnectivityGraph::largest_component_size() const {
    if (n_components == 0) return 0;
    std::vector<std::uint64_t> sizes(n_components, 0);
    for (int label : component_labels) ++sizes[label];
    return *std::max_element(sizes.begin(), sizes.end());
}

std::optional<int> cdist(const ConnectivityGraph& graph, int i, int j) {
    if (i < 0 || j < 0 || i >= graph.n_nodes || j >= graph.n_nodes)
        throw std::invalid_argument("cdist: node index out of range");
    if (i == j) return 0;
    std::vector<int> hops(graph.n_nodes, -1);
    std::deque<int> queue{i};
    hops[i] = 0;
    while (!queue.empty()) {
        const int a = queue.front();
        queue.pop_front();
        for (int b : graph.adjacency[a]) {
            if (hops[b] >= 0) continue;
            hops[b] = hops[a] + 1;
            if (b == j) return std::max(hops[b] - 1, 0);
            queue.push_back(b);
        }
    }
    return std::nullopt;
}

int diam_hat(const ConnectivityGraph& graph) {
    int best = 0;
    for (int i = 0; i < graph.n_nodes; ++i) {
        std::vector<int> hops(graph.n_nodes, -1);
        std::deque<int> queue{i};
        hops[i] = 0;
        while (!queue.empty()) {
            const int a = queue.front();
            queue.pop_front();
            for (int b : graph.adjacency[a]) {
                if (hops[b] >= 0) continue;
                hops[b] = hops[a] + 1;
                best = std::max(best, hops[b] - 1);
                queue.push_back(b);
            }
        }
    }
    return best;
}

CoverQuery covers_point(const CylinderProcessRealization& real, const Point& x) {
    CoverQuery q;
    q.edge_warning = dist(Point::origin(real.d), x) + real.s > real.window_r + 1e-12;
    for (const auto& line : real.lines) {
        if (dist_point_geodesic(x, line).d <= real.s + 1e-12) {
            q.covered = true;
            break;
        }
    }
    return q;
}

double small_intensity_threshold(int d, double s) {
    return 2.0 / measure_hitting_ball(d, s + 1.0);
}

OneStepConnect connect_prob_one_step(int d, double u, const Point& x, const Point& y,
                                     std::uint64_t n, RngStream& rng) {
    if (u < 0.0) throw std::invalid_argument("connect_prob_one_step: u >= 0 required");
    OneStepConnect out;
    const double sep = dist(x, y);
    if (sep < 1e-12) {
        // Coincident centers: mu(L_{B(x,2)}) is the closed form.
        out.mu = Estimate{};
        out.mu.mean = measure_hitting_ball(d, 2.0);
        out.mu.n = 0;
        out.mu.master_seed = rng.master_seed();
        out.mu_exact = true;
    } else {
        const Point o = Point::origin(d);
        const double rx = dist(o, x) + 2.0;
        const double ry = dist(o, y) + 2.0;
        // Window around the nearer ball; a line meeting both regions meets it.
        const double enclosing_r = std::min(rx, ry);
        out.mu = estimate_measure_intersection(rng, HitRegion::ball(x, 2.0),
                                               HitRegion::ball(y, 2.0), enclosing_r, n);
    }
    out.p = -std::expm1(-u * out.mu.mean);
    return out;
}

namespace {

bool window_msteps_connected(const CylinderProcessRealization& real, const Point& y, int m) {
    const double touch = 1.0 + real.s;  // cylinder meets a unit ball
    const double thresh_pair = std::cosh(2.0 * real.s + 1e-9);
    const double thresh_pair_sq = thresh_pair * thresh_pair;
    const int n = static_cast<int>(real.lines.size());

    std::vector<char> is_target(n, 0);
    std::vector<int> depth(n, -1);
    std::deque<int> queue;
    for (int i = 0; i < n; ++i) {
        const auto& line = real.lines[i];
        if (dist_point_geodesic(y, line).d <= touch + 1e-9) is_target[i] = 1;
        if (line.rho <= touch + 1e-9) {
            depth[i] = 1;
            queue.push_back(i);
        }
    }
    for (int i = 0; i < n; ++i)
        if (depth[i] == 1 && is_target[i]) return true;
    while (!queue.empty()) {
        const int a = queue.front();
        queue.pop_front();
        if (depth[a] >= m) continue;
        for (int b = 0; b < n; ++b) {
            if (depth[b] >= 0 || b == a) continue;
            if (cosh_sq_dist_geodesics(real.lines[a], real.lines[b]) > thresh_pair_sq) continue;
            depth[b] = depth[a] + 1;
            if (is_target[b]) return true;
            queue.push_back(b);
        }
    }
    return false;
}

}  // namespace

MStepConnectResult estimate_connect_prob_msteps(std::uint64_t master_seed, int workers, int d,
                                                double u, double R, int m, double margin,
                                                std::uint64_t reps) {
    if (m < 1) throw std::invalid_argument("estimate_connect_prob_msteps: m >= 1 required");
    if (R < 0.0 || margin < 0.0)
        throw std::invalid_argument("estimate_connect_prob_msteps: bad geometry");
    MStepConnectResult out;
    out.window_r = R + margin;
    out.margin = margin;
    const double window_r = out.window_r;
    auto task = [=](RngStream& stream) -> double {
        const CylinderProcessRealization real = realize(stream, u, d, window_r);
        Vec dir(d, 0.0);
        dir[0] = 1.0;
        const Point y = Point::from_polar(R, dir);
        return window_msteps_connected(real, y, m) ? 1.0 : 0.0;
    };
    out.p = replicate(task, reps, master_seed, workers);
    return out;
}

MarginSensitivity msteps_margin_sensitivity(std::uint64_t master_seed, int workers, int d,
                                            double u, double R, int m, double margin,
                                            std::uint64_t reps) {
    MarginSensitivity out;
    out.at_margin = estimate_connect_prob_msteps(master_seed, workers, d, u, R, m, margin, reps);
    out.at_margin_plus_2 =
        estimate_connect_prob_msteps(master_seed + 1, workers, d, u, R, m, margin + 2.0, reps);
    const double diff = std::fabs(out.at_margin.p.mean - out.at_margin_plus_2.p.mean);
    const double se = std::sqrt(out.at_margin.p.se * out.at_margin.p.se +
                                out.at_margin_plus_2.p.se * out.at_margin_plus_2.p.se);
    out.flagged = diff > 2.0 * se;
    return out;
}

std::vector<Point> closest_point_process(const CylinderProcessRealization& real) {
    std::vector<Point> feet;
    feet.reserve(real.lines.size());
    for (const auto& line : real.lines) feet.push_back(line.foot());
    return feet;
}

std::vector<PhaseScanRow> phase_scan(std::uint64_t master_seed, int workers, int d,
                                     double window_r, const std::vector<double>& u_grid,
                                     std::uint64_t reps, double s) {
    std::vector<PhaseScanRow> rows;
    rows.reserve(u_grid.size());
    for (std::size_t ui = 0; ui < u_grid.size(); ++ui) {
        const double u = u_grid[ui];
        auto task = [=](RngStream& stream) {
            const auto real = realize(stream, u, d, window_r, s);
            const auto graph = build_graph(real);
            const double n = static_cast<double>(graph.n_nodes);
            double largest_frac = 0.0, pair_conn = 0.0;
            if (graph.n_nodes > 0)
                largest_frac = static_cast<double>(graph.largest_component_size()) / n;
            if (graph.n_nodes > 1) {
                std::vector<double> sizes(graph.n_components, 0.0);
                for (int label : graph.component_labels) sizes[label] += 1.0;
                double same = 0.0;
                for (double sz : sizes) same += sz * (sz - 1.0) / 2.0;
                pair_conn = same / (n * (n - 1.0) / 2.0);
            }
            return std::vector<double>{static_cast<double>(graph.n_components), largest_frac,
                                       pair_conn, graph.n_components == 1 ? 1.0 : 0.0};
        };
        auto est = replicate_vec(task, 4, reps, master_seed, workers, ui * reps);
        PhaseScanRow row;
        row.u = u;
        row.reps = reps;
        row.mean_components = est[0];
        row.largest_frac = est[1];
        row.pair_conn = est[2];
        row.single_component_frac = est[3];
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hypcyl
