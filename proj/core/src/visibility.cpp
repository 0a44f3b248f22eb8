#include <cmath>

#include "inspsim/convex_hull.hpp"
#include "inspsim/sensing.hpp"

namespace inspsim {

namespace {
constexpr double kFlipGamma = 10.0;
}

std::vector<std::uint32_t> hidden_point_removal(const PoiCloud& cloud, const Vec3& viewpoint) {
    const std::size_t n = cloud.size();
    std::vector<Vec3> flipped;
    flipped.reserve(n + 1);

    double max_range = 0.0;
    for (const auto& p : cloud.points) max_range = std::max(max_range, (p - viewpoint).norm());
    const double flip_radius = kFlipGamma * max_range;

    for (const auto& p : cloud.points) {
        const Vec3 q = p - viewpoint;
        const double len = q.norm();
        if (len > 0.0) {
            flipped.push_back(q + 2.0 * (flip_radius - len) * q / len);
        } else {
            flipped.push_back(q);  // coincident with the viewpoint; trivially visible
        }
    }
    flipped.push_back(Vec3::Zero());  // the viewpoint itself

    const auto hull = convex_hull_vertices(flipped);
    std::vector<std::uint32_t> visible;
    visible.reserve(hull.size());
    for (const auto idx : hull) {
        if (idx < n) visible.push_back(idx);
    }
    return visible;
}

}  // namespace inspsim
