#include <cmath>

#include "inspsim/sensing.hpp"

namespace inspsim {

double illumination(const Vec3& /*poi*/, const Vec3& normal, const Vec3& sun_dir,
                    const Vec3& view_dir, const CaptureConfig& cfg, double orbital_phase) {
    const double diffuse_dot = normal.dot(sun_dir);
    if (cfg.illum_mode == IllumMode::Binary) {
        return diffuse_dot > 0.0 ? 1.0 : 0.0;
    }
    double phase = std::fmod(orbital_phase, 2.0 * M_PI);
    if (phase < 0.0) phase += 2.0 * M_PI;
    if (phase >= cfg.earth_angle_lo && phase <= cfg.earth_angle_hi) return 0.0;

    Vec3 h = sun_dir + view_dir;
    const double hn = h.norm();
    double spec = 0.0;
    if (hn > 0.0) {
        h /= hn;
        spec = cfg.specular * std::pow(std::max(normal.dot(h), 0.0), cfg.shininess);
    }
    return cfg.ambient + cfg.diffuse * std::max(diffuse_dot, 0.0) + spec;
}

}  // namespace inspsim
