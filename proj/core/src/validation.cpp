#include "inspsim/validation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "inspsim/frames.hpp"
#include "inspsim/ply.hpp"

namespace inspsim {

namespace {

// Entrance transfers shorter than this arc would get a near-zero TOF from the
// angle heuristic (radial approaches are the worst case), so the commanded
// time of flight is floored at the arc of one candidate-ring slot.
constexpr double kEntranceAngleFloor = 2.0 * M_PI / 20.0;

void add_face(PoiCloud& cloud, const Vec3& corner, const Vec3& u_edge, const Vec3& v_edge,
              const Vec3& normal, double points_per_meter) {
    const std::size_t nu =
        std::max<std::size_t>(1, std::size_t(std::lround(u_edge.norm() * points_per_meter)));
    const std::size_t nv =
        std::max<std::size_t>(1, std::size_t(std::lround(v_edge.norm() * points_per_meter)));
    for (std::size_t i = 0; i < nu; ++i) {
        for (std::size_t j = 0; j < nv; ++j) {
            const Vec3 p = corner + u_edge * ((double(i) + 0.5) / double(nu)) +
                           v_edge * ((double(j) + 0.5) / double(nv));
            cloud.points.push_back(p);
            cloud.normals.push_back(normal);
        }
    }
}

void add_box(PoiCloud& cloud, const Vec3& center, const Vec3& half, double density,
             bool skip_x_faces) {
    const double hx = half.x(), hy = half.y(), hz = half.z();
    // +z / -z
    add_face(cloud, center + Vec3(-hx, -hy, hz), Vec3(2 * hx, 0, 0), Vec3(0, 2 * hy, 0),
             Vec3::UnitZ(), density);
    add_face(cloud, center + Vec3(-hx, -hy, -hz), Vec3(0, 2 * hy, 0), Vec3(2 * hx, 0, 0),
             -Vec3::UnitZ(), density);
    // +y / -y
    add_face(cloud, center + Vec3(-hx, hy, -hz), Vec3(2 * hx, 0, 0), Vec3(0, 0, 2 * hz),
             Vec3::UnitY(), density);
    add_face(cloud, center + Vec3(-hx, -hy, -hz), Vec3(0, 0, 2 * hz), Vec3(2 * hx, 0, 0),
             -Vec3::UnitY(), density);
    if (!skip_x_faces) {
        add_face(cloud, center + Vec3(hx, -hy, -hz), Vec3(0, 2 * hy, 0), Vec3(0, 0, 2 * hz),
                 Vec3::UnitX(), density);
        add_face(cloud, center + Vec3(-hx, -hy, -hz), Vec3(0, 0, 2 * hz), Vec3(0, 2 * hy, 0),
                 -Vec3::UnitX(), density);
    }
}

}  // namespace

PoiCloud panel_satellite_cloud(std::size_t approx_vertices) {
    if (approx_vertices < 24) {
        throw std::invalid_argument("panel_satellite_cloud: need at least 24 vertices");
    }
    // 10 x 4 x 4 m bus with two 10 x 4 m solar panels along +/-y.
    const Vec3 bus_half(5.0, 2.0, 2.0);
    const Vec3 panel_half(2.0, 5.0, 0.05);
    const double bus_area = 8.0 * (bus_half.x() * bus_half.y() + bus_half.y() * bus_half.z() +
                                   bus_half.x() * bus_half.z());
    const double panel_area = 2.0 * 2.0 * (4.0 * panel_half.x() * panel_half.y());
    const double density = std::sqrt(double(approx_vertices) / (bus_area + panel_area));

    PoiCloud cloud;
    add_box(cloud, Vec3::Zero(), bus_half, density, false);
    add_box(cloud, Vec3(0.0, bus_half.y() + panel_half.y() + 1.0, 0.0), panel_half, density,
            true);
    add_box(cloud, Vec3(0.0, -(bus_half.y() + panel_half.y() + 1.0), 0.0), panel_half, density,
            true);
    return cloud;
}

EntranceResult entrance_maneuver(const RelState6& spawn, const Vec3& target,
                                 std::optional<Vec3> arrival_velocity, double step,
                                 const Constants& c) {
    const double na = spawn.pos.norm(), nb = target.norm();
    if (na == 0.0 || nb == 0.0) {
        throw std::invalid_argument("entrance_maneuver: zero position");
    }
    const double angle =
        std::acos(std::clamp(spawn.pos.dot(target) / (na * nb), -1.0, 1.0));
    const double tof =
        std::max(angle, kEntranceAngleFloor) / (2.0 * M_PI * c.sigma_mu());

    EntranceResult res;
    TrackResult transfer = plan_and_track(spawn, target, tof, step, c);
    res.trajectory = transfer.trajectory;
    for (const auto& s : transfer.thrust_log) {
        res.fuel_steps.push_back(s.u.norm() * step / c.mass);
    }
    res.final_state = transfer.final_state;
    res.fuel = transfer.delta_v_spent;

    if (arrival_velocity) {
        TrackResult burn = match_velocity(transfer.final_state, *arrival_velocity, step, c);
        for (std::size_t i = 1; i < burn.trajectory.size(); ++i) {
            res.trajectory.push_back(burn.trajectory[i]);
        }
        for (const auto& s : burn.thrust_log) {
            res.fuel_steps.push_back(s.u.norm() * step / c.mass);
        }
        res.final_state = burn.final_state;
        res.fuel += burn.delta_v_spent;
    }
    return res;
}

namespace {

struct DeputySim {
    RelState6 state;
    std::vector<RelState6> leg_states;  // upcoming step boundaries
    std::vector<double> leg_fuel;       // per-step fuel matching leg_states
    std::size_t cursor = 0;
    Vec3 hold_point = Vec3::Zero();
    double fuel = 0.0;

    bool exhausted() const { return cursor >= leg_states.size(); }

    void load(std::vector<RelState6> states, std::vector<double> fuel_steps) {
        leg_states = std::move(states);
        leg_fuel = std::move(fuel_steps);
        cursor = 0;
    }

    void load(const TrackResult& r, double step, double mass) {
        std::vector<RelState6> states(r.trajectory.begin() + 1, r.trajectory.end());
        std::vector<double> fuel_steps;
        fuel_steps.reserve(r.thrust_log.size());
        for (const auto& s : r.thrust_log) fuel_steps.push_back(s.u.norm() * step / mass);
        load(std::move(states), std::move(fuel_steps));
    }

    void advance() {
        state = leg_states[cursor];
        fuel += leg_fuel[cursor];
        ++cursor;
    }
};

std::size_t mode_index(RsoMode mode) {
    return mode == RsoMode::StaticCWH ? 0 : 1;
}

}  // namespace

const char* mode_name(RsoMode mode) {
    return mode == RsoMode::StaticCWH ? "static" : "tumble";
}

const char* policy_name(StrategyKind policy) {
    switch (policy) {
        case StrategyKind::PointHold: return "point_hold";
        case StrategyKind::NmcHold: return "nmc_hold";
        case StrategyKind::WaypointSequence: return "waypoint_sequence";
        case StrategyKind::GreedyActive: return "greedy_active";
    }
    return "unknown";
}

TrialRecord run_trial(RsoMode mode, StrategyKind policy, std::size_t trial_index,
                      const ValConfig& cfg, const PoiCloud& cloud) {
    if (!cfg.valid()) throw std::invalid_argument("run_trial: invalid config");
    const Constants c;
    const double n = c.sigma_mu();
    const double dt = cfg.dt;

    TrialRecord rec;
    rec.mode = mode;
    rec.policy = policy;
    rec.trial_index = trial_index;

    // Common random numbers: the stream depends on (mode, trial) only, so
    // every policy faces the same rotation draw and the same spawn states.
    CounterRng rng(cfg.rng_seed,
                   (std::uint64_t(mode_index(mode)) << 32) | std::uint64_t(trial_index));

    RotState rot;
    const Vec3 nominal = nominal_omega(mode, c);
    Vec3 omega_ref;  // mode spin axes are fixed in the reference frame
    for (int i = 0; i < 3; ++i) {
        omega_ref(i) =
            nominal(i) * (1.0 + rng.uniform(-cfg.omega_bound_b, cfg.omega_bound_b));
    }
    {
        // uniform random attitude (Shoemake's subgroup method)
        const double u1 = rng.uniform(), u2 = rng.uniform(), u3 = rng.uniform();
        const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
        rot.q = Vec4(b * std::cos(2.0 * M_PI * u3), a * std::sin(2.0 * M_PI * u2),
                     a * std::cos(2.0 * M_PI * u2), b * std::sin(2.0 * M_PI * u3));
        rot.normalize();
    }
    rot.omega = quat_to_matrix(rot.q).transpose() * omega_ref;

    std::vector<RelState6> spawns(cfg.n_deputies);
    const double lo3 = std::pow(cfg.entrance_r_lo, 3.0);
    const double hi3 = std::pow(cfg.entrance_r_hi, 3.0);
    for (auto& s : spawns) {
        do {
            const Vec3 dir = rng.unit_vector();
            const double r = std::cbrt(lo3 + rng.uniform() * (hi3 - lo3));
            s.pos = dir * r;
        } while (s.pos.norm() < cfg.keep_out);
    }

    const ActionSpace space = policy == StrategyKind::NmcHold
                                  ? build_nmc_family(cfg.n_agloc, cfg.nmc_x0, 0.0, c)
                                  : build_waypoint_ring(cfg.n_agloc, cfg.waypoint_radius, c);

    StrategySpec spec;
    spec.kind = policy;
    for (std::size_t k = 0; k < cfg.n_deputies; ++k) {
        switch (policy) {
            case StrategyKind::PointHold:
                spec.assignment.push_back({cfg.ph_assignment[k % cfg.ph_assignment.size()]});
                break;
            case StrategyKind::NmcHold:
                spec.assignment.push_back({cfg.nmc_assignment[k % cfg.nmc_assignment.size()]});
                break;
            default:
                spec.assignment.push_back({});
                break;
        }
    }
    Strategy strategy(spec, space, cfg.reward, c);

    // Decimated cloud for the greedy lookahead (scoring only; the actual
    // inspection always runs on the full cloud).
    PoiCloud greedy_cloud;
    InspectionState greedy_seen(0);
    const std::size_t stride = std::max<std::size_t>(1, cfg.greedy_prediction_stride);
    if (policy == StrategyKind::GreedyActive) {
        for (std::size_t i = 0; i < cloud.size(); i += stride) {
            greedy_cloud.points.push_back(cloud.points[i]);
            greedy_cloud.normals.push_back(cloud.normals[i]);
        }
        greedy_seen = InspectionState(greedy_cloud.size());
    }

    // Entrance maneuvers; infeasibility is a recorded outcome, not an error.
    std::vector<DeputySim> deputies(cfg.n_deputies);
    try {
        for (std::size_t k = 0; k < cfg.n_deputies; ++k) {
            Vec3 target;
            std::optional<Vec3> arrival;
            switch (policy) {
                case StrategyKind::PointHold: {
                    target = space.waypoints[spec.assignment[k].front()];
                    arrival = Vec3::Zero();
                    break;
                }
                case StrategyKind::NmcHold: {
                    const std::size_t action = spec.assignment[k].front();
                    const double phase_t =
                        c.orbital_period() * double(action) / double(cfg.n_agloc);
                    const RelState6 entry = RelState6::from_vector(
                        cw_stm(phase_t, c) * nmc_init(cfg.nmc_x0, 0.0, c).to_vector());
                    target = entry.pos;
                    arrival = entry.vel;
                    break;
                }
                default: {
                    // active policies enter at the nearest candidate location
                    double best = std::numeric_limits<double>::infinity();
                    for (const auto& wp : space.waypoints) {
                        const double d = (wp - spawns[k].pos).norm();
                        if (d < best) {
                            best = d;
                            target = wp;
                        }
                    }
                    break;
                }
            }
            EntranceResult ent = entrance_maneuver(spawns[k], target, arrival, dt, c);
            deputies[k].state = spawns[k];
            deputies[k].hold_point = target;
            deputies[k].load(std::move(ent.trajectory), std::move(ent.fuel_steps));
            // drop the duplicated start state
            deputies[k].leg_states.erase(deputies[k].leg_states.begin());
        }
    } catch (const SingularTransferError& e) {
        rec.failure_reason = e.what();
        return rec;
    } catch (const TrackingFailureError& e) {
        rec.failure_reason = e.what();
        return rec;
    }

    const Mat6 coast_stm = cw_stm(dt, c);
    const std::size_t total_steps = std::size_t(std::llround(cfg.horizon_t / dt));
    const std::size_t image_every =
        std::max<std::size_t>(1, std::size_t(std::llround(cfg.imaging_period / dt)));

    InspectionState seen(cloud.size());
    rec.fuel_series.reserve(total_steps + 1);
    rec.coverage_series.reserve(total_steps + 1);

    auto refill = [&](std::size_t k, double t) {
        DeputySim& d = deputies[k];
        switch (policy) {
            case StrategyKind::PointHold: {
                d.load(hold_at(d.state, d.hold_point, cfg.imaging_period, dt, c), dt, c.mass);
                return;
            }
            case StrategyKind::NmcHold: {
                std::vector<RelState6> states;
                RelState6 s = d.state;
                for (std::size_t i = 0; i < image_every; ++i) {
                    s = RelState6::from_vector(coast_stm * s.to_vector());
                    states.push_back(s);
                }
                d.load(std::move(states), std::vector<double>(image_every, 0.0));
                return;
            }
            default: {
                WorldView view;
                view.time = t;
                view.deputy = d.state;
                view.rso = rot;
                view.cloud = &greedy_cloud;
                view.inspection = &greedy_seen;
                view.capture_cfg = cfg.capture;
                view.inertia = cfg.inertia;
                view.rotation_step = dt;
                view.imaging_period = cfg.imaging_period;
                view.sun_phase_rate = n;
                const Decision dec = strategy.step(view, k);
                if (dec.kind == Decision::Kind::Transfer) {
                    try {
                        d.load(plan_and_track(d.state, dec.waypoint,
                                              std::max(dec.tof, dt), dt, c),
                               dt, c.mass);
                        return;
                    } catch (const TrackingFailureError&) {
                        // fall through to a coast chunk
                    } catch (const SingularTransferError&) {
                    }
                }
                std::vector<RelState6> states;
                RelState6 s = d.state;
                for (std::size_t i = 0; i < image_every; ++i) {
                    s = RelState6::from_vector(coast_stm * s.to_vector());
                    states.push_back(s);
                }
                d.load(std::move(states), std::vector<double>(image_every, 0.0));
                return;
            }
        }
    };

    double fuel_total = 0.0;
    for (std::size_t step_i = 0; step_i <= total_steps; ++step_i) {
        const double t = double(step_i) * dt;

        if (step_i % image_every == 0) {
            const double phase = n * t;
            const Vec3 sun = sun_direction_hill(phase);
            RotState hill_rot = rot;
            hill_rot.q = body_to_hill(rot.q, phase);
            for (const auto& d : deputies) {
                if (d.state.pos.norm() == 0.0) continue;
                for (const auto id :
                     capture(cloud, hill_rot, d.state.pos, sun, phase, cfg.capture)) {
                    seen.accumulate({id});
                    if (policy == StrategyKind::GreedyActive && id % stride == 0) {
                        greedy_seen.accumulate({std::uint32_t(id / stride)});
                    }
                }
            }
        }

        fuel_total = 0.0;
        for (const auto& d : deputies) fuel_total += d.fuel;
        rec.fuel_series.push_back(float(fuel_total));
        rec.coverage_series.push_back(float(seen.fraction()));

        if (seen.fraction() >= cfg.threshold_m) {
            rec.tau = t;
            rec.success = true;
            break;
        }
        if (step_i == total_steps) break;

        for (std::size_t k = 0; k < deputies.size(); ++k) {
            if (deputies[k].exhausted()) refill(k, t);
            deputies[k].advance();
        }
        rot = propagate_rotation(rot, cfg.inertia, dt, dt);
    }

    rec.fuel_total = fuel_total;
    rec.inspection_fraction = seen.fraction();
    return rec;
}

std::vector<TrialRecord> run_campaign(const ValConfig& cfg, int jobs) {
    if (!cfg.valid()) throw std::invalid_argument("run_campaign: invalid config");
    const PoiCloud cloud = cfg.geometry_ply.empty()
                               ? panel_satellite_cloud(cfg.standin_vertices)
                               : load_ply(cfg.geometry_ply);

    struct Cell {
        RsoMode mode;
        StrategyKind policy;
        std::size_t trial;
    };
    std::vector<Cell> cells;
    for (const auto mode : cfg.modes) {
        for (const auto policy : cfg.policies) {
            for (std::size_t i = 0; i < cfg.trials_per_cell; ++i) {
                cells.push_back({mode, policy, i});
            }
        }
    }

    std::vector<TrialRecord> out(cells.size());
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned n_threads =
        std::min<unsigned>(jobs > 0 ? unsigned(jobs) : hw, unsigned(cells.size()));

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < n_threads; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) return;
                try {
                    out[i] = run_trial(cells[i].mode, cells[i].policy, cells[i].trial, cfg,
                                       cloud);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace inspsim
