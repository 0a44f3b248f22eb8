#pragma once

#include <cstdint>
#include <vector>

#include "inspsim/guidance.hpp"
#include "inspsim/llc.hpp"
#include "inspsim/rng.hpp"

namespace inspsim {

enum class RsoMode { StaticCWH, StableTumble };

/// Nominal angular velocity of an RSO mode in multiples of sigma_mu.
Vec3 nominal_omega(RsoMode mode, const Constants& c);

/// Monte-Carlo campaign configuration (passive strategies, sphere geometry,
/// binary illumination).
struct McConfig {
    std::size_t n_samples = 1000;
    RsoMode rso_mode = RsoMode::StaticCWH;
    Vec4 q_nom = Vec4(1.0, 0.0, 0.0, 0.0);
    double omega_bound_b = 0.2;          ///< proportional bound on each omega component
    double attitude_bound = M_PI / 6.0;  ///< max attitude perturbation angle [rad]
    InertiaDiag inertia;
    double dt = 1.0;                 ///< rotation integration step [s]
    std::size_t n_key = 20;          ///< POI count on the sphere
    std::size_t n_agloc = 20;        ///< candidate agent locations
    double fov = M_PI / 6.0;
    double occ = M_PI / 6.0;         ///< legacy occlusion angle; retained in configs
    double horizon = 6280.0;         ///< [s]
    double imaging_period = 100.0;   ///< [s]
    double threshold_m = 0.85;       ///< completion threshold for the time metric
    double waypoint_radius = 200.0;  ///< [m]
    double nmc_x0 = 200.0;           ///< [m]
    double sphere_radius = 10.0;     ///< [m]
    std::size_t n_deputies = 3;
    std::uint64_t rng_seed = 0;
    std::uint64_t sample_offset = 0;  ///< global index of the first sample (stream split)

    bool valid() const {
        return n_samples >= 1 && omega_bound_b >= 0.0 && omega_bound_b <= 1.0 &&
               dt > 0.0 && horizon > 0.0;
    }
};

/// Per-sample passive-strategy metrics.
struct McSample {
    double inspection_fraction = 0.0;
    double time_to_threshold = 0.0;  ///< horizon when never reached
    double fuel = 0.0;               ///< [m/s]
    bool reached = false;
};

struct EvalResult {
    StrategySpec strategy;
    double mean_inspection_fraction = 0.0;
    double mean_time_to_threshold = 0.0;
    double mean_fuel = 0.0;
    std::vector<McSample> samples;
};

/// Draw an initial RSO rotational state: proportional per-component omega
/// perturbation and an attitude offset of uniform angle about a random axis.
RotState sample_initial_rotation(const McConfig& cfg, CounterRng& rng);

/// Roll a passive strategy over n_samples rotation draws. Throws
/// std::invalid_argument for non-passive specs.
EvalResult evaluate_strategy(const StrategySpec& spec, const McConfig& cfg);

/// All unordered deputy-to-action assignments (multisets) for a passive kind
/// over the action space.
std::vector<StrategySpec> enumerate_passive_strategies(const ActionSpace& space,
                                                       std::size_t n_deputies);

/// Non-dominated subset under (fraction max, time min); ties kept.
std::vector<std::size_t> pareto_front(const std::vector<EvalResult>& results);

}  // namespace inspsim
