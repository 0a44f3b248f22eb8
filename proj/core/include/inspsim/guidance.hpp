#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "inspsim/dynamics.hpp"
#include "inspsim/sensing.hpp"

namespace inspsim {

/// Discrete high-level action set.
struct ActionSpace {
    enum class Kind { WaypointRing, NmcFamily };

    struct NmcSample {
        double t = 0.0;
        Vec3 pos = Vec3::Zero();
    };

    Kind kind = Kind::WaypointRing;
    std::vector<Vec3> waypoints;                        ///< WaypointRing targets / NMC entry points
    std::vector<std::vector<NmcSample>> nmc_samples;    ///< per-action closed NMC discretization
    std::size_t cardinality() const { return waypoints.size(); }
};

enum class StrategyKind { PointHold, NmcHold, WaypointSequence, GreedyActive };

/// Per-deputy strategy assignment. For PointHold/NmcHold one action index per
/// deputy; for WaypointSequence an ordered index sequence per deputy.
struct StrategySpec {
    StrategyKind kind = StrategyKind::PointHold;
    std::vector<std::vector<std::uint32_t>> assignment;  ///< [deputy][sequence position]

    bool passive() const {
        return kind == StrategyKind::PointHold || kind == StrategyKind::NmcHold;
    }
};

/// One-step reward weighting for the greedy active policy.
struct RewardConfig {
    double gamma = 0.95;        ///< retained for forward compatibility
    double fuel_weight = 1.0;
    std::size_t horizon_steps = 1;

    bool valid() const { return gamma > 0.0 && gamma <= 1.0; }
};

/// n points evenly spaced on the in-plane circle of the given radius.
/// Verifies every ordered pair transfers without singularity under the TOF
/// heuristic; throws SingularTransferError otherwise.
ActionSpace build_waypoint_ring(std::size_t n, double radius, const Constants& c);

/// n phase-discretized entry points along the closed NMC through (x0, 0, z0),
/// each action carrying a full-period sample trajectory (first == last).
ActionSpace build_nmc_family(std::size_t n, double x0, double z0, const Constants& c);

/// Transfer time heuristic: internal angle over 2*pi*sigma_mu; the a == a_hat
/// dwell uses half the nearest-neighbor traversal time within the space.
double tof_heuristic(const Vec3& a, const Vec3& a_hat, const ActionSpace& space,
                     const Constants& c);

/// Instantaneous transfer cost ||v0(a, a_hat, dT) - current_vel||.
double transfer_delta_v(const Vec3& a, const Vec3& a_hat, const Vec3& current_vel,
                        const ActionSpace& space, const Constants& c);

/// One-step greedy surrogate of the inspection reward.
double greedy_score(double predicted_new_fraction, double delta_v, const RewardConfig& cfg);

/// What the high-level strategy asks of a deputy next.
struct Decision {
    enum class Kind { Transfer, Coast, Complete };
    Kind kind = Kind::Coast;
    Vec3 waypoint = Vec3::Zero();
    double tof = 0.0;
};

/// Scene information the greedy policy scores candidate actions against.
struct WorldView {
    double time = 0.0;
    RelState6 deputy;
    RotState rso;
    const PoiCloud* cloud = nullptr;
    const InspectionState* inspection = nullptr;
    CaptureConfig capture_cfg;
    InertiaDiag inertia;
    double rotation_step = 1.0;
    double imaging_period = 100.0;
    double sun_phase_rate = 0.0;  ///< d(orbital phase)/dt; phase at time t is rate * t
};

/// Predicted newly-seen coverage fraction along the NMT from the deputy state
/// to `target`, imaging at the fixed rate.
double predict_new_coverage(const WorldView& view, const Vec3& target, double tof,
                            const Constants& c);

/// Stateful per-trial strategy cursor; one instance per trial, never shared.
class Strategy {
public:
    Strategy(StrategySpec spec, const ActionSpace& space, RewardConfig reward,
             const Constants& c);

    /// Next decision for one deputy. PointHold re-emits the held waypoint at
    /// the dwell TOF; NmcHold coasts; WaypointSequence walks its list and
    /// completes; GreedyActive scores every action against the world view.
    Decision step(const WorldView& view, std::size_t deputy);

    const StrategySpec& spec() const { return spec_; }
    const ActionSpace& space() const { return space_; }

private:
    StrategySpec spec_;
    ActionSpace space_;
    RewardConfig reward_;
    Constants c_;
    std::vector<std::size_t> cursor_;
};

/// JSON strategy-file round trip (schema version 1).
StrategySpec load_strategy(const std::string& path);
void save_strategy(const StrategySpec& spec, const std::string& path);

}  // namespace inspsim
