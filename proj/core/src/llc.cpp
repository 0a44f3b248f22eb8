#include "inspsim/llc.hpp"

#include <cmath>

namespace inspsim {

namespace {

Vec3 clamp_thrust(const Vec3& u, double u_max) {
    const double mag = u.norm();
    return (mag > u_max) ? Vec3(u * (u_max / mag)) : u;
}

void apply_step(TrackResult& r, RelState6& state, const Vec3& u, double h, double t,
                const Constants& c) {
    r.thrust_log.push_back({t, u});
    state = propagate(state, {{0.0, u}}, h, c);
    r.delta_v_spent += u.norm() * h / c.mass;
    r.trajectory.push_back(state);
}

}  // namespace

TrackResult plan_and_track(const RelState6& start, const Vec3& target, double tof,
                           double step, const Constants& c, double pos_tol) {
    if (step <= 0.0 || tof < step) {
        throw std::invalid_argument("plan_and_track: need tof >= step > 0");
    }
    // Re-time past a singular transfer window before starting.
    double total = tof;
    while (transfer_condition(total, c) > kTransferCondLimit) {
        total += step;
        if (total > tof + c.orbital_period()) {
            throw SingularTransferError("plan_and_track: no well-posed tof near " +
                                        std::to_string(tof));
        }
    }

    TrackResult r;
    RelState6 state = start;
    r.trajectory.push_back(state);
    double t = 0.0;
    while (total - t > 1e-9) {
        const double remaining = total - t;
        const double h = std::min(step, remaining);
        Vec3 u = Vec3::Zero();
        try {
            const Vec3 v0 = solve_transfer(state.pos, target, remaining, c);
            const Vec3 dv = v0 - state.vel;
            // A near-singular replan can command a correction no amount of
            // thrust could deliver in the remaining window; coast until the
            // geometry improves instead of burning flat out in a bad direction.
            if (dv.norm() <= c.u_max / c.mass * remaining) {
                u = clamp_thrust(dv * (c.mass / h), c.u_max);
            }
        } catch (const SingularTransferError&) {
            // transient singular window mid-transfer: coast this step
        }
        apply_step(r, state, u, h, t, c);
        t += h;
    }
    if ((state.pos - target).norm() > pos_tol) {
        throw TrackingFailureError("plan_and_track: terminal error " +
                                   std::to_string((state.pos - target).norm()) +
                                   " m exceeds tolerance");
    }
    r.final_state = state;
    return r;
}

TrackResult hold_at(const RelState6& start, const Vec3& point, double duration,
                    double step, const Constants& c) {
    if (step <= 0.0 || duration < 0.0) {
        throw std::invalid_argument("hold_at: need duration >= 0 and step > 0");
    }
    constexpr double kp = 1.6e-4;  // ~500 s position loop
    constexpr double kd = 2.5e-2;

    TrackResult r;
    RelState6 state = start;
    r.trajectory.push_back(state);
    double t = 0.0;
    while (duration - t > 1e-9) {
        const double h = std::min(step, duration - t);
        const Vec3 accel = cw_acceleration(state.pos, state.vel, Vec3::Zero(), c);
        const Vec3 u = clamp_thrust(
            c.mass * (-accel - kp * (state.pos - point) - kd * state.vel), c.u_max);
        apply_step(r, state, u, h, t, c);
        t += h;
    }
    r.final_state = state;
    return r;
}

TrackResult match_velocity(const RelState6& start, const Vec3& v_target, double step,
                           const Constants& c, double tol, double max_time) {
    TrackResult r;
    RelState6 state = start;
    r.trajectory.push_back(state);
    double t = 0.0;
    while ((v_target - state.vel).norm() > tol) {
        if (t >= max_time) {
            throw TrackingFailureError("match_velocity: did not converge within " +
                                       std::to_string(max_time) + " s");
        }
        const Vec3 dv = v_target - state.vel;
        const Vec3 accel = cw_acceleration(state.pos, state.vel, Vec3::Zero(), c);
        const Vec3 u = clamp_thrust(c.mass * (dv / step - accel), c.u_max);
        apply_step(r, state, u, step, t, c);
        t += step;
    }
    r.final_state = state;
    return r;
}

}  // namespace inspsim
