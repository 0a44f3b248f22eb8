#include "inspsim/poi_cloud.hpp"

#include <cmath>
#include <stdexcept>

namespace inspsim {

PoiCloud sphere_cloud(std::size_t n_points, double radius) {
    if (n_points < 4) throw std::invalid_argument("sphere_cloud: need at least 4 points");
    if (radius <= 0.0) throw std::invalid_argument("sphere_cloud: radius must be positive");

    PoiCloud cloud;
    cloud.points.reserve(n_points);
    cloud.normals.reserve(n_points);
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < n_points; ++k) {
        const double z = 1.0 - 2.0 * (double(k) + 0.5) / double(n_points);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * double(k);
        const Vec3 dir(r * std::cos(phi), r * std::sin(phi), z);
        cloud.points.push_back(radius * dir);
        cloud.normals.push_back(dir);
    }
    return cloud;
}

void InspectionState::accumulate(const std::vector<std::uint32_t>& new_ids) {
    for (const auto id : new_ids) {
        if (id >= seen_.size()) {
            throw std::out_of_range("InspectionState::accumulate: unknown POI id " +
                                    std::to_string(id));
        }
        if (!seen_[id]) {
            seen_[id] = 1;
            ++n_seen_;
        }
    }
}

}  // namespace inspsim
