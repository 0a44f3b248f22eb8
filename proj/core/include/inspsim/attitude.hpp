#pragma once

#include "inspsim/common.hpp"

namespace inspsim {

/// Principal moments of inertia [kg m^2]. Must be positive and satisfy the
/// triangle inequalities.
struct InertiaDiag {
    double ixx = 100.0;
    double iyy = 70.0;
    double izz = 50.0;

    bool valid() const {
        return ixx > 0.0 && iyy > 0.0 && izz > 0.0 &&
               ixx + iyy >= izz && iyy + izz >= ixx && izz + ixx >= iyy;
    }
};

/// RSO rotational state: unit quaternion (scalar-first [w,x,y,z], Hamilton
/// convention, body-to-reference) plus body angular velocity [rad/s].
struct RotState {
    Vec4 q = Vec4(1.0, 0.0, 0.0, 0.0);
    Vec3 omega = Vec3::Zero();

    void normalize() { q.normalize(); }
};

/// Hamilton product of scalar-first quaternions.
Vec4 quat_multiply(const Vec4& p, const Vec4& q);

/// Rotate a vector by the scalar-first quaternion q (active rotation).
Vec3 quat_rotate(const Vec4& q, const Vec3& v);

/// Rotation matrix of the scalar-first quaternion q.
Mat3 quat_to_matrix(const Vec4& q);

/// Torque-free Euler rates in the principal body frame.
Vec3 euler_rates(const Vec3& omega, const InertiaDiag& inertia);

/// Quaternion kinematics qdot = 1/2 q (x) [0, omega].
Vec4 quat_derivative(const RotState& state);

/// RK4 co-integration of attitude and angular velocity with per-step
/// quaternion renormalization.
RotState propagate_rotation(const RotState& state, const InertiaDiag& inertia,
                            double dt, double step = 1.0);

/// Rotational kinetic energy 1/2 w' I w.
double rotational_energy(const RotState& state, const InertiaDiag& inertia);

/// Angular momentum magnitude ||I w||.
double momentum_magnitude(const RotState& state, const InertiaDiag& inertia);

}  // namespace inspsim
