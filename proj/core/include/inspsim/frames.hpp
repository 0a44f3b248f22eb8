#pragma once

#include <cmath>

#include "inspsim/attitude.hpp"

namespace inspsim {

/// Quaternion (scalar-first) for a rotation of `angle` about `axis`.
inline Vec4 quat_from_axis_angle(const Vec3& axis, double angle) {
    const Vec3 a = axis.normalized();
    const double h = 0.5 * angle;
    const double s = std::sin(h);
    return Vec4(std::cos(h), s * a.x(), s * a.y(), s * a.z());
}

/// Sun direction resolved in Hill's frame at a given orbital phase.
/// The sun is static in ECI along the t=0 radial; Hill's frame has rotated
/// by `phase` since then.
inline Vec3 sun_direction_hill(double phase) {
    return Vec3(std::cos(phase), -std::sin(phase), 0.0);
}

/// Compose a body-to-ECI attitude with the Hill-frame rotation: the result
/// rotates body vectors into Hill coordinates at the given orbital phase.
inline Vec4 body_to_hill(const Vec4& q_body_to_eci, double phase) {
    return quat_multiply(quat_from_axis_angle(Vec3::UnitZ(), -phase), q_body_to_eci);
}

}  // namespace inspsim
