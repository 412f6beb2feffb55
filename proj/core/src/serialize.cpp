#include "hypcyl/serialize.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace hypcyl {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json line_json(const Geodesic& line) {
    const int d = line.dim();
    std::vector<double> fd(d), tan(d);
    const double sh = std::sinh(line.rho);
    for (int i = 0; i < d; ++i) {
        fd[i] = sh > 1e-300 ? line.p[i + 1] / sh : 0.0;
        tan[i] = line.v[i + 1];
    }
    return json{{"rho", line.rho}, {"foot_direction", fd}, {"tangent", tan}};
}

}  // namespace

std::string point_to_json(const Point& pt) {
    return json{{"model", "ball"}, {"coords", pt.to_ball()}}.dump();
}

std::string line_to_json(const Geodesic& line) { return line_json(line).dump(); }

std::string lines_to_json(std::span<const Geodesic> lines) {
    json arr = json::array();
    for (const auto& line : lines) arr.push_back(line_json(line));
    return arr.dump();
}

std::string lines_to_csv(std::span<const Geodesic> lines, int d) {
    std::ostringstream out;
    out << "rho";
    for (int i = 0; i < d; ++i) out << ",fd_" << i;
    for (int i = 0; i < d; ++i) out << ",tan_" << i;
    out << "\n";
    for (const auto& line : lines) {
        const json j = line_json(line);
        out << fmt(j["rho"].get<double>());
        for (int i = 0; i < d; ++i) out << "," << fmt(j["foot_direction"][i].get<double>());
        for (int i = 0; i < d; ++i) out << "," << fmt(j["tangent"][i].get<double>());
        out << "\n";
    }
    return out.str();
}

std::string realization_to_json(const CylinderProcessRealization& real) {
    json arr = json::array();
    for (const auto& line : real.lines) arr.push_back(line_json(line));
    return json{{"d", real.d},
                {"u", real.u},
                {"window_r", real.window_r},
                {"s", real.s},
                {"master_seed", real.master_seed},
                {"stream_id", real.stream_id},
                {"lines", arr}}
        .dump();
}

std::string graph_to_json(const ConnectivityGraph& graph) {
    json edges = json::array();
    for (const auto& [i, j] : graph.edges) edges.push_back(json::array({i, j}));
    return json{{"n_nodes", graph.n_nodes},
                {"edges", edges},
                {"component_labels", graph.component_labels},
                {"n_components", graph.n_components}}
        .dump();
}

std::string estimate_to_json(const Estimate& est) {
    return json{{"mean", est.mean},         {"se", est.se},
                {"ci95_low", est.ci95_low}, {"ci95_high", est.ci95_high},
                {"n", est.n},               {"master_seed", est.master_seed}}
        .dump();
}

}  // namespace hypcyl
