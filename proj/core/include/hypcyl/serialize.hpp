#pragma once

#include <span>
#include <string>
#include <vector>

#include "hypcyl/cylinder_process.hpp"
#include "hypcyl/geometry.hpp"
#include "hypcyl/monte_carlo.hpp"

namespace hypcyl {

/// {"model":"ball","coords":[...]} — points travel in ball coordinates.
std::string point_to_json(const Point& pt);

/// {"rho":..., "foot_direction":[...], "tangent":[...]}
std::string line_to_json(const Geodesic& line);
std::string lines_to_json(std::span<const Geodesic> lines);
/// Columns rho, fd_0..fd_{d-1}, tan_0..tan_{d-1}.
std::string lines_to_csv(std::span<const Geodesic> lines, int d);

std::string realization_to_json(const CylinderProcessRealization& real);
std::string graph_to_json(const ConnectivityGraph& graph);

std::string estimate_to_json(const Estimate& est);

}  // namespace hypcyl
