#pragma once

#include <vector>

#include "inspsim/dynamics.hpp"

namespace inspsim {

/// Closed-loop tracking output for one commanded maneuver.
struct TrackResult {
    std::vector<RelState6> trajectory;     ///< state at every step boundary (incl. start)
    std::vector<ThrustSample> thrust_log;  ///< applied per-step thrust
    double delta_v_spent = 0.0;            ///< sum ||u|| dt / m  [m/s]
    RelState6 final_state;
};

inline constexpr double kDefaultPosTol = 0.1;  // [m]

/// Discretized minimum-effort retargeting: at every step the required
/// initial velocity for the remaining transfer is recomputed and the
/// bounded-thrust segment that cancels the velocity mismatch is applied.
/// Throws TrackingFailureError when the thrust bound starves the correction
/// for many consecutive steps; a singular remaining-time window is re-timed
/// by extending the TOF to the next well-posed value.
TrackResult plan_and_track(const RelState6& start, const Vec3& target, double tof,
                           double step, const Constants& c,
                           double pos_tol = kDefaultPosTol);

/// Station-keep at a fixed Hill-frame point for `duration` seconds:
/// feedforward cancellation of the CW acceleration plus a PD correction,
/// thrust-bounded. Fuel integrates ||u|| dt / m.
TrackResult hold_at(const RelState6& start, const Vec3& point, double duration,
                    double step, const Constants& c);

/// Burn (bounded) until the velocity matches v_target within tol, coasting
/// position through the dynamics. Used for NMC insertion after an entrance
/// transfer.
TrackResult match_velocity(const RelState6& start, const Vec3& v_target, double step,
                           const Constants& c, double tol = 1e-4,
                           double max_time = 60.0);

}  // namespace inspsim
