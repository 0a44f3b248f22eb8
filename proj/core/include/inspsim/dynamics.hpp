#pragma once

#include <cmath>
#include <vector>

#include "inspsim/common.hpp"

namespace inspsim {

/// Chief-orbit constants shared by every simulation stage.
/// sigma_mu is always recomputed from mu and r0_orbit, never stored.
struct Constants {
    double mu = 3.986004418e14;     ///< Earth gravitational parameter [m^3/s^2] (WGS-84)
    double r0_orbit = 7'357'000.0;  ///< RSO orbital radius [m]
    double mass = 1.0;              ///< deputy mass [kg]
    double r_max = 1000.0;          ///< relative-motion bounding box edge [m]
    double u_max = 1.0;             ///< thrust bound [N]

    double sigma_mu() const { return std::sqrt(mu / (r0_orbit * r0_orbit * r0_orbit)); }
    double orbital_period() const { return 2.0 * M_PI / sigma_mu(); }
};

/// Hill-frame relative position/velocity of one deputy.
struct RelState6 {
    Vec3 pos = Vec3::Zero();  ///< [m]
    Vec3 vel = Vec3::Zero();  ///< [m/s]

    Vec6 to_vector() const {
        Vec6 x;
        x << pos, vel;
        return x;
    }
    static RelState6 from_vector(const Vec6& x) {
        return RelState6{x.head<3>(), x.tail<3>()};
    }
};

/// One piecewise-constant thrust segment sample.
struct ThrustSample {
    double t = 0.0;       ///< segment start time [s]
    Vec3 u = Vec3::Zero();  ///< force [N], held constant until the next sample
};

/// Closed-form zero-input state transition matrix of the CW equations.
/// State ordering [x, y, z, xdot, ydot, zdot]; dt >= 0.
Mat6 cw_stm(double dt, const Constants& c);

/// Integral of the STM against a constant acceleration over [0, dt],
/// mapping acceleration [m/s^2] to the state increment. Closed form.
Eigen::Matrix<double, 6, 3> cw_control_convolution(double dt, const Constants& c);

/// Hill-frame acceleration of the CW dynamics at (pos, vel) with force u.
Vec3 cw_acceleration(const Vec3& pos, const Vec3& vel, const Vec3& u, const Constants& c);

/// Propagate a state for dt seconds under a piecewise-constant thrust
/// schedule covering [0, dt]. Exact per-segment STM composition; an empty
/// schedule means zero thrust. Rejects non-finite inputs.
RelState6 propagate(const RelState6& state, const std::vector<ThrustSample>& thrust,
                    double dt, const Constants& c);

/// Zero-fuel closed relative orbit through (x0, 0, z0).
/// Throws DegenerateNmcError when x0 == 0.
RelState6 nmc_init(double x0, double z0, const Constants& c);

/// Initial velocity of the NMT connecting a to a_hat in tof seconds.
/// Throws SingularTransferError when the transfer is ill-posed
/// (cond of the position/velocity STM block above 1e8) or tof <= 0.
Vec3 solve_transfer(const Vec3& a, const Vec3& a_hat, double tof, const Constants& c);

/// Arrival velocity of the same NMT. Errors as solve_transfer.
Vec3 final_velocity(const Vec3& a, const Vec3& a_hat, double tof, const Constants& c);

/// Condition number of the 3x3 position-from-velocity STM block at tof.
double transfer_condition(double tof, const Constants& c);

inline constexpr double kTransferCondLimit = 1e8;

}  // namespace inspsim
