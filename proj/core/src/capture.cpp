#include <cmath>

#include "inspsim/sensing.hpp"

namespace inspsim {

std::vector<std::uint32_t> capture(const PoiCloud& cloud, const RotState& rso_rotation,
                                   const Vec3& viewpoint, const Vec3& sun_dir,
                                   double orbital_phase, const CaptureConfig& cfg) {
    std::vector<std::uint32_t> out;
    if (cloud.empty()) return out;
    if (viewpoint.norm() == 0.0) {
        throw std::invalid_argument("capture: viewpoint must be nonzero");
    }

    const Mat3 rot = quat_to_matrix(rso_rotation.q);
    PoiCloud world;
    world.points.resize(cloud.size());
    world.normals.resize(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        world.points[i] = rot * cloud.points[i];
        world.normals[i] = rot * cloud.normals[i];
    }

    const Vec3 boresight = -viewpoint.normalized();  // toward the RSO origin
    const double cos_fov = std::cos(cfg.fov_half_angle);

    const auto hpr_visible = hidden_point_removal(world, viewpoint);

    out.reserve(hpr_visible.size());
    for (const auto id : hpr_visible) {
        const Vec3 rel = world.points[id] - viewpoint;
        const double len = rel.norm();
        if (len > 0.0 && boresight.dot(rel) / len < cos_fov) continue;  // outside cone

        const Vec3 view_dir = len > 0.0 ? Vec3(-rel / len) : Vec3(-boresight);
        const double intensity = illumination(world.points[id], world.normals[id], sun_dir,
                                              view_dir, cfg, orbital_phase);
        const bool accepted = (cfg.illum_mode == IllumMode::Binary)
                                  ? intensity == 1.0
                                  : (intensity > cfg.dark_min && intensity < cfg.bright_max);
        if (accepted) out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace inspsim
