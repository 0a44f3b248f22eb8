#pragma once

#include <optional>
#include <string>
#include <vector>

#include "inspsim/mc_eval.hpp"

namespace inspsim {

/// Validation-campaign configuration: higher-fidelity illumination, general
/// geometry, modeled entrance, first-hitting-time termination.
struct ValConfig {
    double threshold_m = 0.85;
    double horizon_t = 6280.0;
    CaptureConfig capture;            ///< BlinnPhong + Earth shadow by default
    double omega_bound_b = 0.2;       ///< proportional omega sampling bound
    double entrance_r_lo = 150.0;     ///< spawn shell inner radius [m]
    double entrance_r_hi = 400.0;     ///< spawn shell outer radius [m]
    double keep_out = 50.0;           ///< spawn exclusion sphere [m]
    std::size_t trials_per_cell = 30;
    std::vector<RsoMode> modes = {RsoMode::StaticCWH, RsoMode::StableTumble};
    std::vector<StrategyKind> policies = {StrategyKind::PointHold, StrategyKind::NmcHold,
                                          StrategyKind::GreedyActive};
    InertiaDiag inertia;
    double dt = 1.0;
    double imaging_period = 100.0;
    std::size_t n_deputies = 3;
    std::size_t n_agloc = 20;
    double waypoint_radius = 200.0;
    double nmc_x0 = 200.0;
    std::string geometry_ply;               ///< empty: procedural stand-in mesh
    std::size_t standin_vertices = 1000;
    std::size_t greedy_prediction_stride = 4;  ///< POI subsampling for greedy lookahead
    RewardConfig reward;
    std::vector<std::uint32_t> ph_assignment = {0, 7, 13};   ///< ring indices per deputy
    std::vector<std::uint32_t> nmc_assignment = {0, 7, 13};  ///< NMC phase indices per deputy
    std::uint64_t rng_seed = 0;

    bool valid() const {
        return threshold_m >= 0.0 && threshold_m <= 1.0 && trials_per_cell >= 1 &&
               horizon_t > 0.0 && dt > 0.0;
    }

    ValConfig() {
        capture.illum_mode = IllumMode::BlinnPhongEarthShadow;
    }
};

/// Per-trial metrics and 1 Hz time series.
struct TrialRecord {
    RsoMode mode = RsoMode::StaticCWH;
    StrategyKind policy = StrategyKind::PointHold;
    std::size_t trial_index = 0;
    double fuel_total = 0.0;             ///< [m/s]
    double inspection_fraction = 0.0;
    bool success = false;
    std::optional<double> tau;           ///< first hitting time [s]
    std::string failure_reason;          ///< nonempty when the entrance was infeasible
    std::vector<float> fuel_series;      ///< cumulative, 1 s cadence
    std::vector<float> coverage_series;  ///< cumulative, 1 s cadence
};

/// Procedurally generated box-with-panels stand-in geometry (the validation
/// mesh cited by the original campaign is not redistributable; see README).
PoiCloud panel_satellite_cloud(std::size_t approx_vertices);

/// Single-NMT entrance transfer from a spawn state to the strategy's first
/// waypoint (or nearest NMC insertion point, with a velocity-matching burn).
/// Throws SingularTransferError / TrackingFailureError on infeasibility.
struct EntranceResult {
    std::vector<RelState6> trajectory;  ///< at dt cadence, incl. start
    std::vector<double> fuel_steps;     ///< per-step fuel [m/s]
    RelState6 final_state;
    double fuel = 0.0;
};
EntranceResult entrance_maneuver(const RelState6& spawn, const Vec3& target,
                                 std::optional<Vec3> arrival_velocity, double step,
                                 const Constants& c);

/// One seeded validation trial. Entrance failures are recorded in the
/// TrialRecord, not thrown.
TrialRecord run_trial(RsoMode mode, StrategyKind policy, std::size_t trial_index,
                      const ValConfig& cfg, const PoiCloud& cloud);

/// Full factorial modes x policies x trials_per_cell. `jobs` <= 0 means all
/// hardware threads; results are independent of the parallelism degree.
std::vector<TrialRecord> run_campaign(const ValConfig& cfg, int jobs = 0);

const char* mode_name(RsoMode mode);
const char* policy_name(StrategyKind policy);

}  // namespace inspsim
