#include "inspsim/attitude.hpp"

#include <cmath>

namespace inspsim {

Vec4 quat_multiply(const Vec4& p, const Vec4& q) {
    const double pw = p(0), px = p(1), py = p(2), pz = p(3);
    const double qw = q(0), qx = q(1), qy = q(2), qz = q(3);
    return Vec4(pw * qw - px * qx - py * qy - pz * qz,
                pw * qx + px * qw + py * qz - pz * qy,
                pw * qy - px * qz + py * qw + pz * qx,
                pw * qz + px * qy - py * qx + pz * qw);
}

Mat3 quat_to_matrix(const Vec4& q) {
    const double w = q(0), x = q(1), y = q(2), z = q(3);
    Mat3 r;
    r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
         2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
         2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return r;
}

Vec3 quat_rotate(const Vec4& q, const Vec3& v) {
    return quat_to_matrix(q) * v;
}

Vec3 euler_rates(const Vec3& omega, const InertiaDiag& in) {
    return Vec3((in.iyy - in.izz) / in.ixx * omega.y() * omega.z(),
                (in.izz - in.ixx) / in.iyy * omega.x() * omega.z(),
                (in.ixx - in.iyy) / in.izz * omega.x() * omega.y());
}

Vec4 quat_derivative(const RotState& state) {
    const Vec4 pure(0.0, state.omega.x(), state.omega.y(), state.omega.z());
    return 0.5 * quat_multiply(state.q, pure);
}

namespace {

struct RotDeriv {
    Vec4 dq;
    Vec3 dw;
};

RotDeriv deriv(const Vec4& q, const Vec3& w, const InertiaDiag& in) {
    RotState s;
    s.q = q;
    s.omega = w;
    return {quat_derivative(s), euler_rates(w, in)};
}

}  // namespace

RotState propagate_rotation(const RotState& state, const InertiaDiag& inertia,
                            double dt, double step) {
    if (dt < 0.0 || step <= 0.0) {
        throw std::invalid_argument("propagate_rotation: dt >= 0 and step > 0 required");
    }
    RotState s = state;
    double remaining = dt;
    while (remaining > 0.0) {
        const double h = std::min(step, remaining);
        const RotDeriv k1 = deriv(s.q, s.omega, inertia);
        const RotDeriv k2 = deriv(s.q + 0.5 * h * k1.dq, s.omega + 0.5 * h * k1.dw, inertia);
        const RotDeriv k3 = deriv(s.q + 0.5 * h * k2.dq, s.omega + 0.5 * h * k2.dw, inertia);
        const RotDeriv k4 = deriv(s.q + h * k3.dq, s.omega + h * k3.dw, inertia);
        s.q += (h / 6.0) * (k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq);
        s.omega += (h / 6.0) * (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw);
        s.normalize();
        remaining -= h;
    }
    return s;
}

double rotational_energy(const RotState& state, const InertiaDiag& in) {
    const Vec3& w = state.omega;
    return 0.5 * (in.ixx * w.x() * w.x() + in.iyy * w.y() * w.y() + in.izz * w.z() * w.z());
}

double momentum_magnitude(const RotState& state, const InertiaDiag& in) {
    const Vec3& w = state.omega;
    return Vec3(in.ixx * w.x(), in.iyy * w.y(), in.izz * w.z()).norm();
}

}  // namespace inspsim
