#pragma once

#include <cstdint>
#include <vector>

#include "inspsim/common.hpp"

namespace inspsim {

/// Indices of the points lying on the 3D convex hull (sorted ascending).
/// Quickhull with conflict lists. Throws std::invalid_argument when fewer
/// than 4 non-degenerate points are supplied.
std::vector<std::uint32_t> convex_hull_vertices(const std::vector<Vec3>& points);

}  // namespace inspsim
