#include "inspsim/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "inspsim/frames.hpp"

namespace inspsim {

namespace {

double internal_angle(const Vec3& a, const Vec3& b) {
    const double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0) {
        throw std::invalid_argument("tof_heuristic: zero vector input");
    }
    const double cosang = std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
    return std::acos(cosang);
}

double min_pair_angle(const ActionSpace& space) {
    double best = std::numeric_limits<double>::infinity();
    const auto& w = space.waypoints;
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            const double ang = internal_angle(w[i], w[j]);
            if (ang > 0.0) best = std::min(best, ang);
        }
    }
    if (!std::isfinite(best)) {
        throw std::invalid_argument("tof_heuristic: dwell needs a space with distinct waypoints");
    }
    return best;
}

}  // namespace

double tof_heuristic(const Vec3& a, const Vec3& a_hat, const ActionSpace& space,
                     const Constants& c) {
    const double n = c.sigma_mu();
    const double ang = internal_angle(a, a_hat);
    if ((a - a_hat).norm() > 0.0 && ang > 0.0) {
        return ang / (2.0 * M_PI * n);
    }
    return min_pair_angle(space) / (4.0 * M_PI * n);
}

ActionSpace build_waypoint_ring(std::size_t n, double radius, const Constants& c) {
    if (n < 2) throw std::invalid_argument("build_waypoint_ring: need n >= 2");
    ActionSpace space;
    space.kind = ActionSpace::Kind::WaypointRing;
    space.waypoints.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double phase = 2.0 * M_PI * double(k) / double(n);
        space.waypoints.emplace_back(radius * std::cos(phase), radius * std::sin(phase), 0.0);
    }
    // every ordered pair (including dwell) must be well-posed
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double tof = tof_heuristic(space.waypoints[i], space.waypoints[j], space, c);
            solve_transfer(space.waypoints[i], space.waypoints[j], tof, c);
        }
    }
    return space;
}

ActionSpace build_nmc_family(std::size_t n, double x0, double z0, const Constants& c) {
    if (n < 1) throw std::invalid_argument("build_nmc_family: need n >= 1");
    const RelState6 base = nmc_init(x0, z0, c);
    const double period = c.orbital_period();

    ActionSpace space;
    space.kind = ActionSpace::Kind::NmcFamily;
    space.waypoints.reserve(n);
    space.nmc_samples.reserve(n);
    const std::size_t samples_per_orbit = std::max<std::size_t>(n, 2);
    for (std::size_t k = 0; k < n; ++k) {
        const double phase_t = period * double(k) / double(n);
        const RelState6 entry =
            RelState6::from_vector(cw_stm(phase_t, c) * base.to_vector());
        space.waypoints.push_back(entry.pos);

        std::vector<ActionSpace::NmcSample> samples;
        samples.reserve(samples_per_orbit + 1);
        for (std::size_t s = 0; s <= samples_per_orbit; ++s) {
            const double t = period * double(s) / double(samples_per_orbit);
            const RelState6 st =
                RelState6::from_vector(cw_stm(t, c) * entry.to_vector());
            samples.push_back({t, s == samples_per_orbit ? samples.front().pos : st.pos});
        }
        space.nmc_samples.push_back(std::move(samples));
    }
    return space;
}

double transfer_delta_v(const Vec3& a, const Vec3& a_hat, const Vec3& current_vel,
                        const ActionSpace& space, const Constants& c) {
    const double tof = tof_heuristic(a, a_hat, space, c);
    const Vec3 v0 = solve_transfer(a, a_hat, tof, c);
    return (v0 - current_vel).norm();
}

double greedy_score(double predicted_new_fraction, double delta_v, const RewardConfig& cfg) {
    return predicted_new_fraction - cfg.fuel_weight * delta_v;
}

double predict_new_coverage(const WorldView& view, const Vec3& target, double tof,
                            const Constants& c) {
    if (!view.cloud || !view.inspection || view.cloud->empty()) return 0.0;

    const Vec3 start = view.deputy.pos;
    const Vec3 v0 = solve_transfer(start, target, tof, c);
    RelState6 st{start, v0};

    std::vector<std::uint8_t> newly(view.cloud->size(), 0);
    RotState rot = view.rso;
    double t = 0.0;
    while (t <= tof + 1e-9) {
        const double phase = view.sun_phase_rate * (view.time + t);
        const Vec3 sun_dir = sun_direction_hill(phase);
        RotState hill_rot = rot;
        hill_rot.q = body_to_hill(rot.q, phase);
        if (st.pos.norm() > 0.0) {
            for (const auto id : capture(*view.cloud, hill_rot, st.pos, sun_dir, phase,
                                         view.capture_cfg)) {
                if (!view.inspection->contains(id)) newly[id] = 1;
            }
        }
        const double dt = std::min(view.imaging_period, tof - t);
        if (dt <= 0.0) break;
        st = RelState6::from_vector(cw_stm(dt, c) * st.to_vector());
        rot = propagate_rotation(rot, view.inertia, dt, view.rotation_step);
        t += dt;
    }
    std::size_t count = 0;
    for (const auto b : newly) count += b;
    return double(count) / double(view.cloud->size());
}

Strategy::Strategy(StrategySpec spec, const ActionSpace& space, RewardConfig reward,
                   const Constants& c)
    : spec_(std::move(spec)), space_(space), reward_(reward), c_(c),
      cursor_(spec_.assignment.size(), 0) {
    for (const auto& seq : spec_.assignment) {
        for (const auto idx : seq) {
            if (idx >= space_.cardinality()) {
                throw std::invalid_argument("StrategySpec references action index " +
                                            std::to_string(idx) + " outside the action space");
            }
        }
    }
}

Decision Strategy::step(const WorldView& view, std::size_t deputy) {
    if (deputy >= spec_.assignment.size()) {
        throw std::out_of_range("Strategy::step: deputy index not registered");
    }
    Decision d;
    switch (spec_.kind) {
        case StrategyKind::PointHold: {
            const Vec3& wp = space_.waypoints[spec_.assignment[deputy].front()];
            d.kind = Decision::Kind::Transfer;
            d.waypoint = wp;
            d.tof = tof_heuristic(wp, wp, space_, c_);
            return d;
        }
        case StrategyKind::NmcHold:
            d.kind = Decision::Kind::Coast;
            return d;
        case StrategyKind::WaypointSequence: {
            auto& cur = cursor_[deputy];
            const auto& seq = spec_.assignment[deputy];
            if (cur >= seq.size()) {
                d.kind = Decision::Kind::Complete;
                return d;
            }
            const Vec3& wp = space_.waypoints[seq[cur++]];
            d.kind = Decision::Kind::Transfer;
            d.waypoint = wp;
            d.tof = tof_heuristic(view.deputy.pos, wp, space_, c_);
            return d;
        }
        case StrategyKind::GreedyActive: {
            double best_score = -std::numeric_limits<double>::infinity();
            for (const auto& wp : space_.waypoints) {
                double tof, dv;
                // an already-reached waypoint is scored as a dwell loop
                const bool at_wp = (view.deputy.pos - wp).norm() < 1.0;
                try {
                    tof = at_wp ? tof_heuristic(wp, wp, space_, c_)
                                : tof_heuristic(view.deputy.pos, wp, space_, c_);
                    dv = (solve_transfer(view.deputy.pos, wp, tof, c_) - view.deputy.vel).norm();
                } catch (const SingularTransferError&) {
                    continue;
                }
                const double gain = predict_new_coverage(view, wp, tof, c_);
                const double score = greedy_score(gain, dv, reward_);
                if (score > best_score) {
                    best_score = score;
                    d.kind = Decision::Kind::Transfer;
                    d.waypoint = wp;
                    d.tof = tof;
                }
            }
            if (d.kind != Decision::Kind::Transfer) d.kind = Decision::Kind::Coast;
            return d;
        }
    }
    return d;
}

StrategySpec load_strategy(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open strategy file '" + path + "'");
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("strategy file '" + path + "': " + e.what());
    }
    if (!j.contains("schema") || j["schema"].get<int>() != 1) {
        throw ConfigError("strategy file '" + path + "': unsupported schema");
    }
    StrategySpec spec;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "PointHold") spec.kind = StrategyKind::PointHold;
    else if (kind == "NmcHold") spec.kind = StrategyKind::NmcHold;
    else if (kind == "WaypointSequence") spec.kind = StrategyKind::WaypointSequence;
    else if (kind == "GreedyActive") spec.kind = StrategyKind::GreedyActive;
    else throw ConfigError("strategy file '" + path + "': unknown kind '" + kind + "'");
    for (const auto& dep : j.at("assignment")) {
        spec.assignment.push_back(dep.get<std::vector<std::uint32_t>>());
    }
    return spec;
}

void save_strategy(const StrategySpec& spec, const std::string& path) {
    nlohmann::json j;
    j["schema"] = 1;
    switch (spec.kind) {
        case StrategyKind::PointHold: j["kind"] = "PointHold"; break;
        case StrategyKind::NmcHold: j["kind"] = "NmcHold"; break;
        case StrategyKind::WaypointSequence: j["kind"] = "WaypointSequence"; break;
        case StrategyKind::GreedyActive: j["kind"] = "GreedyActive"; break;
    }
    j["assignment"] = spec.assignment;
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write strategy file '" + path + "'");
    f << j.dump(2) << "\n";
}

}  // namespace inspsim
