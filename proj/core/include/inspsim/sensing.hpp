#pragma once

#include <cstdint>
#include <vector>

#include "inspsim/attitude.hpp"
#include "inspsim/poi_cloud.hpp"

namespace inspsim {

/// How POI illumination is scored.
enum class IllumMode {
    Binary,               ///< 1 when the diffuse term is positive, else 0
    BlinnPhongEarthShadow  ///< ambient/diffuse/specular model, zeroed inside the Earth-shadow arc
};

/// Camera and lighting acceptance thresholds.
struct CaptureConfig {
    double fov_half_angle = M_PI / 6.0;  ///< cone half-angle about the boresight [rad]
    double bright_max = 0.9;             ///< over-exposure cutoff (exclusive)
    double dark_min = 0.1;               ///< under-exposure cutoff (exclusive)
    IllumMode illum_mode = IllumMode::Binary;
    double ambient = 0.1;
    double diffuse = 0.7;
    double specular = 1.0;
    double shininess = 1.0;
    double earth_angle_lo = 2.0 * M_PI / 3.0;  ///< shadow arc start [rad]
    double earth_angle_hi = 4.0 * M_PI / 3.0;  ///< shadow arc end [rad]

    bool valid() const {
        return fov_half_angle > 0.0 && fov_half_angle <= M_PI && dark_min >= 0.0 &&
               dark_min < bright_max;
    }
};

/// Ids of cloud points visible from `viewpoint` via spherical-flip hidden
/// point removal (flip radius 10x the maximum viewpoint range, hull over the
/// flipped cloud plus the viewpoint). Cloud must already be expressed in the
/// viewing frame. Throws when fewer than 4 non-degenerate points remain.
std::vector<std::uint32_t> hidden_point_removal(const PoiCloud& cloud, const Vec3& viewpoint);

/// Surface intensity of one POI. `orbital_phase` is measured from the sun
/// vector; inside the Earth-shadow arc BlinnPhong intensity is forced to 0.
double illumination(const Vec3& poi, const Vec3& normal, const Vec3& sun_dir,
                    const Vec3& view_dir, const CaptureConfig& cfg, double orbital_phase);

/// Ids captured in a single image: POIs rotated into the viewing frame by
/// `rso_rotation.q`, inside the FOV cone about the viewpoint-to-origin
/// boresight, HPR-visible, and acceptably illuminated.
std::vector<std::uint32_t> capture(const PoiCloud& cloud, const RotState& rso_rotation,
                                   const Vec3& viewpoint, const Vec3& sun_dir,
                                   double orbital_phase, const CaptureConfig& cfg);

}  // namespace inspsim
