#include "inspsim/mc_eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "inspsim/frames.hpp"

namespace inspsim {

Vec3 nominal_omega(RsoMode mode, const Constants& c) {
    const double n = c.sigma_mu();
    switch (mode) {
        case RsoMode::StaticCWH: return Vec3(0.0, 0.0, n);
        case RsoMode::StableTumble: return Vec3(5.0 * n, 0.0, 50.0 * n);
    }
    return Vec3::Zero();
}

RotState sample_initial_rotation(const McConfig& cfg, CounterRng& rng) {
    const Constants c;
    const Vec3 nominal = nominal_omega(cfg.rso_mode, c);
    RotState s;
    Vec3 omega_ref;  // mode spin axes are fixed in the reference frame
    for (int i = 0; i < 3; ++i) {
        omega_ref(i) = nominal(i) * (1.0 + rng.uniform(-cfg.omega_bound_b, cfg.omega_bound_b));
    }
    const Vec3 axis = rng.unit_vector();
    const double angle = rng.uniform(0.0, cfg.attitude_bound);
    s.q = quat_multiply(quat_from_axis_angle(axis, angle), cfg.q_nom);
    s.normalize();
    s.omega = quat_to_matrix(s.q).transpose() * omega_ref;
    return s;
}

namespace {

struct DeputyTrack {
    bool coasting = false;   // NMC: coast from entry_state; PH: fixed at entry_state.pos
    RelState6 entry_state;
    double hold_rate = 0.0;  // PH station-keeping fuel rate [m/s per s]
};

}  // namespace

EvalResult evaluate_strategy(const StrategySpec& spec, const McConfig& cfg) {
    if (!spec.passive()) {
        throw std::invalid_argument("evaluate_strategy: passive strategies only");
    }
    if (!cfg.valid()) throw std::invalid_argument("evaluate_strategy: invalid config");

    const Constants c;
    const double n = c.sigma_mu();
    const ActionSpace space =
        spec.kind == StrategyKind::PointHold
            ? build_waypoint_ring(cfg.n_agloc, cfg.waypoint_radius, c)
            : build_nmc_family(cfg.n_agloc, cfg.nmc_x0, 0.0, c);
    const PoiCloud cloud = sphere_cloud(cfg.n_key, cfg.sphere_radius);

    CaptureConfig cap;
    cap.fov_half_angle = cfg.fov;
    cap.illum_mode = IllumMode::Binary;

    // Deputy kinematics are deterministic per strategy; set them up once.
    std::vector<DeputyTrack> deputies;
    for (const auto& seq : spec.assignment) {
        DeputyTrack d;
        const std::size_t action = seq.front();
        if (spec.kind == StrategyKind::PointHold) {
            d.entry_state.pos = space.waypoints[action];
            const Vec3& p = d.entry_state.pos;
            // analytic station-keeping thrust: cancel the CW acceleration at rest
            d.hold_rate = n * n *
                          std::sqrt(9.0 * p.x() * p.x() + p.z() * p.z());
        } else {
            d.coasting = true;
            const double phase_t = c.orbital_period() * double(action) / double(cfg.n_agloc);
            const RelState6 base = nmc_init(cfg.nmc_x0, 0.0, c);
            d.entry_state = RelState6::from_vector(cw_stm(phase_t, c) * base.to_vector());
        }
        deputies.push_back(d);
    }

    const Mat6 coast_step = cw_stm(cfg.imaging_period, c);

    EvalResult result;
    result.strategy = spec;
    result.samples.reserve(cfg.n_samples);

    for (std::size_t i = 0; i < cfg.n_samples; ++i) {
        CounterRng rng(cfg.rng_seed, cfg.sample_offset + i);
        RotState rot = sample_initial_rotation(cfg, rng);

        InspectionState seen(cloud.size());
        std::vector<RelState6> positions;
        for (const auto& d : deputies) positions.push_back(d.entry_state);

        McSample sample;
        sample.time_to_threshold = cfg.horizon;
        double t = 0.0;
        while (t <= cfg.horizon + 1e-9) {
            const double phase = n * t;
            const Vec3 sun = sun_direction_hill(phase);
            RotState hill_rot = rot;
            hill_rot.q = body_to_hill(rot.q, phase);
            for (std::size_t k = 0; k < deputies.size(); ++k) {
                seen.accumulate(
                    capture(cloud, hill_rot, positions[k].pos, sun, phase, cap));
            }
            if (!sample.reached && seen.fraction() >= cfg.threshold_m) {
                sample.reached = true;
                sample.time_to_threshold = t;
                break;  // metrics are frozen once the threshold is hit
            }
            if (t + cfg.imaging_period > cfg.horizon + 1e-9) break;
            rot = propagate_rotation(rot, cfg.inertia, cfg.imaging_period, cfg.dt);
            for (std::size_t k = 0; k < deputies.size(); ++k) {
                if (deputies[k].coasting) {
                    positions[k] = RelState6::from_vector(coast_step * positions[k].to_vector());
                }
            }
            t += cfg.imaging_period;
        }
        sample.inspection_fraction = seen.fraction();
        for (const auto& d : deputies) sample.fuel += d.hold_rate * sample.time_to_threshold;
        result.samples.push_back(sample);
    }

    for (const auto& s : result.samples) {
        result.mean_inspection_fraction += s.inspection_fraction;
        result.mean_time_to_threshold += s.time_to_threshold;
        result.mean_fuel += s.fuel;
    }
    const double inv = 1.0 / double(result.samples.size());
    result.mean_inspection_fraction *= inv;
    result.mean_time_to_threshold *= inv;
    result.mean_fuel *= inv;
    return result;
}

namespace {

void combinations_rec(std::size_t n_actions, std::size_t remaining, std::size_t start,
                      std::vector<std::uint32_t>& current,
                      std::vector<std::vector<std::uint32_t>>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    for (std::size_t a = start; a < n_actions; ++a) {
        current.push_back(std::uint32_t(a));
        combinations_rec(n_actions, remaining - 1, a, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<StrategySpec> enumerate_passive_strategies(const ActionSpace& space,
                                                       std::size_t n_deputies) {
    if (n_deputies < 1) throw std::invalid_argument("enumerate: need n_deputies >= 1");
    std::vector<std::vector<std::uint32_t>> multisets;
    std::vector<std::uint32_t> current;
    combinations_rec(space.cardinality(), n_deputies, 0, current, multisets);

    const StrategyKind kind = space.kind == ActionSpace::Kind::WaypointRing
                                  ? StrategyKind::PointHold
                                  : StrategyKind::NmcHold;
    std::vector<StrategySpec> specs;
    specs.reserve(multisets.size());
    for (const auto& ms : multisets) {
        StrategySpec s;
        s.kind = kind;
        for (const auto a : ms) s.assignment.push_back({a});
        specs.push_back(std::move(s));
    }
    return specs;
}

std::vector<std::size_t> pareto_front(const std::vector<EvalResult>& results) {
    if (results.empty()) throw std::invalid_argument("pareto_front: empty input");
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < results.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < results.size() && !dominated; ++j) {
            if (i == j) continue;
            const bool ge = results[j].mean_inspection_fraction >=
                            results[i].mean_inspection_fraction;
            const bool le = results[j].mean_time_to_threshold <=
                            results[i].mean_time_to_threshold;
            const bool strict = results[j].mean_inspection_fraction >
                                    results[i].mean_inspection_fraction ||
                                results[j].mean_time_to_threshold <
                                    results[i].mean_time_to_threshold;
            dominated = ge && le && strict;
        }
        if (!dominated) front.push_back(i);
    }
    return front;
}

}  // namespace inspsim
