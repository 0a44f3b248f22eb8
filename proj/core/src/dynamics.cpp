#include "inspsim/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace inspsim {

Mat6 cw_stm(double dt, const Constants& c) {
    const double n = c.sigma_mu();
    const double nt = n * dt;
    const double s = std::sin(nt);
    const double co = std::cos(nt);

    Mat6 phi = Mat6::Zero();
    // position rows
    phi(0, 0) = 4.0 - 3.0 * co;
    phi(0, 3) = s / n;
    phi(0, 4) = 2.0 * (1.0 - co) / n;
    phi(1, 0) = 6.0 * (s - nt);
    phi(1, 1) = 1.0;
    phi(1, 3) = -2.0 * (1.0 - co) / n;
    phi(1, 4) = (4.0 * s - 3.0 * nt) / n;
    phi(2, 2) = co;
    phi(2, 5) = s / n;
    // velocity rows
    phi(3, 0) = 3.0 * n * s;
    phi(3, 3) = co;
    phi(3, 4) = 2.0 * s;
    phi(4, 0) = 6.0 * n * (co - 1.0);
    phi(4, 3) = -2.0 * s;
    phi(4, 4) = 4.0 * co - 3.0;
    phi(5, 2) = -n * s;
    phi(5, 5) = co;
    return phi;
}

Eigen::Matrix<double, 6, 3> cw_control_convolution(double dt, const Constants& c) {
    const double n = c.sigma_mu();
    const double nt = n * dt;
    const double s = std::sin(nt);
    const double co = std::cos(nt);
    const double g1 = (1.0 - co) / (n * n);        // integral of sin(ns)/n
    const double g2 = (dt - s / n) / n;            // integral of (1-cos(ns))/n

    Eigen::Matrix<double, 6, 3> gamma = Eigen::Matrix<double, 6, 3>::Zero();
    gamma(0, 0) = g1;
    gamma(0, 1) = 2.0 * g2;
    gamma(1, 0) = -2.0 * g2;
    gamma(1, 1) = 4.0 * g1 - 1.5 * dt * dt;
    gamma(2, 2) = g1;
    gamma(3, 0) = s / n;
    gamma(3, 1) = 2.0 * (1.0 - co) / n;
    gamma(4, 0) = -2.0 * (1.0 - co) / n;
    gamma(4, 1) = 4.0 * s / n - 3.0 * dt;
    gamma(5, 2) = s / n;
    return gamma;
}

Vec3 cw_acceleration(const Vec3& pos, const Vec3& vel, const Vec3& u, const Constants& c) {
    const double n = c.sigma_mu();
    Vec3 a;
    a.x() = 3.0 * n * n * pos.x() + 2.0 * n * vel.y() + u.x() / c.mass;
    a.y() = -2.0 * n * vel.x() + u.y() / c.mass;
    a.z() = -n * n * pos.z() + u.z() / c.mass;
    return a;
}

RelState6 propagate(const RelState6& state, const std::vector<ThrustSample>& thrust,
                    double dt, const Constants& c) {
    if (!state.pos.allFinite() || !state.vel.allFinite()) {
        throw std::invalid_argument("propagate: non-finite state");
    }
    if (dt < 0.0) throw std::invalid_argument("propagate: dt < 0");

    Vec6 x = state.to_vector();
    if (thrust.empty()) {
        return RelState6::from_vector(cw_stm(dt, c) * x);
    }
    for (const auto& seg : thrust) {
        if (!seg.u.allFinite() || !std::isfinite(seg.t)) {
            throw std::invalid_argument("propagate: non-finite thrust sample");
        }
    }
    // Each segment holds u constant from sample time to the next sample (or dt).
    const double lead = std::clamp(thrust.front().t, 0.0, dt);
    if (lead > 0.0) x = cw_stm(lead, c) * x;
    for (std::size_t k = 0; k < thrust.size(); ++k) {
        const double t0 = std::clamp(thrust[k].t, 0.0, dt);
        const double t1 = (k + 1 < thrust.size()) ? std::clamp(thrust[k + 1].t, 0.0, dt) : dt;
        const double span = t1 - t0;
        if (span <= 0.0) continue;
        x = cw_stm(span, c) * x + cw_control_convolution(span, c) * (thrust[k].u / c.mass);
    }
    return RelState6::from_vector(x);
}

RelState6 nmc_init(double x0, double z0, const Constants& c) {
    if (x0 == 0.0) throw DegenerateNmcError("nmc_init: x0 must be nonzero");
    RelState6 s;
    s.pos = Vec3(x0, 0.0, z0);
    s.vel = Vec3(0.0, -2.0 * c.sigma_mu() * x0, 0.0);
    return s;
}

double transfer_condition(double tof, const Constants& c) {
    const Mat6 phi = cw_stm(tof, c);
    const Mat3 phi_rv = phi.block<3, 3>(0, 3);
    Eigen::JacobiSVD<Mat3> svd(phi_rv);
    const double smin = svd.singularValues()(2);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return svd.singularValues()(0) / smin;
}

Vec3 solve_transfer(const Vec3& a, const Vec3& a_hat, double tof, const Constants& c) {
    if (tof <= 0.0) throw SingularTransferError("solve_transfer: tof must be positive");
    const Mat6 phi = cw_stm(tof, c);
    const Mat3 phi_rr = phi.block<3, 3>(0, 0);
    const Mat3 phi_rv = phi.block<3, 3>(0, 3);
    Eigen::JacobiSVD<Mat3> svd(phi_rv, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double smin = svd.singularValues()(2);
    if (smin <= 0.0 || svd.singularValues()(0) / smin > kTransferCondLimit) {
        throw SingularTransferError("solve_transfer: ill-posed transfer at tof=" +
                                    std::to_string(tof));
    }
    return svd.solve(a_hat - phi_rr * a);
}

Vec3 final_velocity(const Vec3& a, const Vec3& a_hat, double tof, const Constants& c) {
    const Vec3 v0 = solve_transfer(a, a_hat, tof, c);
    const Mat6 phi = cw_stm(tof, c);
    return phi.block<3, 3>(3, 0) * a + phi.block<3, 3>(3, 3) * v0;
}

}  // namespace inspsim
