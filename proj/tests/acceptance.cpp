// Acceptance gate: each numbered criterion prints exactly one PASS/FAIL line.
// Run with the criterion numbers to check as arguments; no arguments runs all.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "inspsim/attitude.hpp"
#include "inspsim/config.hpp"
#include "inspsim/dynamics.hpp"
#include "inspsim/guidance.hpp"
#include "inspsim/llc.hpp"
#include "inspsim/mc_eval.hpp"
#include "inspsim/results.hpp"
#include "inspsim/rng.hpp"
#include "inspsim/sensing.hpp"
#include "inspsim/stats.hpp"
#include "inspsim/validation.hpp"

using namespace inspsim;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& why) {
        if (!cond && ok) {
            ok = false;
            detail = why;
        }
    }
    void note(const std::string& extra) {
        if (!detail.empty()) detail += "; ";
        detail += extra;
    }
};

// ---------------------------------------------------------------------------
// Independent RK4 integrator of the CW equations (oracle for criterion 2).
// xddot = 3 n^2 x + 2 n ydot, yddot = -2 n xdot, zddot = -n^2 z.
RelState6 rk4_cw(RelState6 s, double duration, double h, double n) {
    auto deriv = [n](const Vec6& x) {
        Vec6 d;
        d(0) = x(3);
        d(1) = x(4);
        d(2) = x(5);
        d(3) = 3.0 * n * n * x(0) + 2.0 * n * x(4);
        d(4) = -2.0 * n * x(3);
        d(5) = -n * n * x(2);
        return d;
    };
    Vec6 x = s.to_vector();
    double t = 0.0;
    while (t < duration - 1e-12) {
        const double step = std::min(h, duration - t);
        const Vec6 k1 = deriv(x);
        const Vec6 k2 = deriv(x + 0.5 * step * k1);
        const Vec6 k3 = deriv(x + 0.5 * step * k2);
        const Vec6 k4 = deriv(x + step * k3);
        x += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += step;
    }
    return RelState6::from_vector(x);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------------------
Check criterion_1() {
    Check c;
    Constants k;
    const double period = 2.0 * M_PI / k.sigma_mu();
    c.require(std::fabs(period - 6280.0) <= 1.0,
              "orbital period " + fmt(period) + " s not within 1 s of 6280 s");
    c.note("period " + fmt(period) + " s");
    return c;
}

Check criterion_2() {
    Check c;
    Constants k;
    const double period = k.orbital_period();
    const RelState6 start = nmc_init(200.0, 0.0, k);

    const RelState6 stm_end = propagate(start, {}, period, k);
    const double stm_gap = (stm_end.pos - start.pos).norm();
    c.require(stm_gap <= 1e-6, "STM closure gap " + fmt(stm_gap) + " m > 1e-6 m");

    const RelState6 rk4_end = rk4_cw(start, period, 1.0, k.sigma_mu());
    const double rk4_gap = (rk4_end.pos - start.pos).norm();
    c.require(rk4_gap <= 1e-3, "RK4 closure gap " + fmt(rk4_gap) + " m > 1e-3 m");
    c.note("STM gap " + fmt(stm_gap) + " m, RK4 gap " + fmt(rk4_gap) + " m");
    return c;
}

Check criterion_3() {
    Check c;
    Constants k;
    const ActionSpace ring = build_waypoint_ring(20, 200.0, k);
    double worst_free = 0.0, worst_tracked = 0.0;
    for (std::size_t i = 0; i < 20 && c.ok; ++i) {
        for (std::size_t j = 0; j < 20; ++j) {
            if (i == j) continue;
            const Vec3 a = ring.waypoints[i];
            const Vec3 b = ring.waypoints[j];
            const double tof = tof_heuristic(a, b, ring, k);

            const Vec3 v0 = solve_transfer(a, b, tof, k);
            const RelState6 coast = propagate(RelState6{a, v0}, {}, tof, k);
            worst_free = std::max(worst_free, (coast.pos - b).norm());

            const TrackResult tr = plan_and_track(RelState6{a, Vec3::Zero()}, b, tof, 1.0, k);
            worst_tracked = std::max(worst_tracked, (tr.final_state.pos - b).norm());
        }
    }
    c.require(worst_free <= 1e-6,
              "free-flight landing error " + fmt(worst_free) + " m > 1e-6 m");
    c.require(worst_tracked <= 0.1,
              "tracked landing error " + fmt(worst_tracked) + " m > 0.1 m");
    c.note("380 pairs, worst free " + fmt(worst_free) + " m, worst tracked " +
           fmt(worst_tracked) + " m");
    return c;
}

Check criterion_4() {
    Check c;
    Constants k;
    const double period = k.orbital_period();
    const double n = k.sigma_mu();
    const RelState6 at{Vec3(200.0, 0.0, 0.0), Vec3::Zero()};
    const TrackResult hold = hold_at(at, Vec3(200.0, 0.0, 0.0), period, 1.0, k);
    const double analytic = 3.0 * n * n * 200.0 * period;
    c.require(std::fabs(hold.delta_v_spent - analytic) <= 0.02 * analytic,
              "hold fuel " + fmt(hold.delta_v_spent) + " m/s outside " + fmt(analytic) +
                  " m/s +/- 2%");

    // NMC coast: zero-thrust propagation by definition spends no fuel; verify
    // through the Monte-Carlo evaluator, which accounts every commanded burn.
    StrategySpec nmc;
    nmc.kind = StrategyKind::NmcHold;
    nmc.assignment = {{0}};
    McConfig mc;
    mc.n_samples = 1;
    const EvalResult r = evaluate_strategy(nmc, mc);
    c.require(r.mean_fuel <= 1e-3, "NMC coast fuel " + fmt(r.mean_fuel) + " m/s > 1e-3");
    c.note("hold " + fmt(hold.delta_v_spent) + " m/s vs analytic " + fmt(analytic) +
           " m/s, NMC coast " + fmt(r.mean_fuel) + " m/s");
    return c;
}

Check criterion_5() {
    Check c;
    Constants k;
    const double n = k.sigma_mu();
    InertiaDiag inertia;
    const Vec3 modes[] = {Vec3(0.0, 0.0, n), Vec3(5.0 * n, 0.0, 50.0 * n)};
    double worst = 0.0;
    for (const auto& omega : modes) {
        RotState s;
        s.omega = omega;
        const double e0 = rotational_energy(s, inertia);
        const double h0 = momentum_magnitude(s, inertia);
        RotState cur = s;
        for (int t = 0; t < 6280; ++t) cur = propagate_rotation(cur, inertia, 1.0, 1.0);
        worst = std::max(worst, std::fabs(rotational_energy(cur, inertia) - e0) / e0);
        worst = std::max(worst, std::fabs(momentum_magnitude(cur, inertia) - h0) / h0);
    }
    c.require(worst <= 1e-9, "conservation drift " + fmt(worst) + " > 1e-9 relative");
    c.note("worst relative drift " + fmt(worst));
    return c;
}

Check criterion_6() {
    Check c;
    // The flipping operator's silhouette tolerance shrinks with sampling
    // density; 10000 points keep it inside the 2 degree band asserted here.
    const double band = 2.0 * M_PI / 180.0;
    const PoiCloud cloud = sphere_cloud(10000, 10.0);
    const Vec3 viewpoints[] = {Vec3(200, 0, 0), Vec3(0, -150, 80), Vec3(-90, 60, -120),
                               Vec3(90, 90, 90)};
    std::size_t false_pos = 0, missed = 0;
    for (const auto& vp : viewpoints) {
        const auto vis = hidden_point_removal(cloud, vp);
        std::vector<bool> is_vis(cloud.size(), false);
        for (const auto id : vis) is_vis[id] = true;
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            const Vec3 to_view = (vp - cloud.points[i]).normalized();
            const double grazing =
                std::asin(std::clamp(cloud.normals[i].dot(to_view), -1.0, 1.0));
            // back hemisphere beyond the band must never be reported
            if (is_vis[i] && grazing < -band) ++false_pos;
            // clearly inside the silhouette must be reported
            if (!is_vis[i] && grazing > band) ++missed;
        }
    }
    c.require(false_pos == 0,
              std::to_string(false_pos) + " back-hemisphere false positives beyond 2 deg");
    c.require(missed == 0, std::to_string(missed) + " front points missed outside the band");
    c.note("4 viewpoints x 10000 points, band 2 deg");
    return c;
}

Check criterion_7() {
    Check c;
    CounterRng rng(1234, 0);
    std::vector<EvalResult> results(1000);
    for (auto& r : results) {
        r.mean_inspection_fraction = rng.uniform();
        r.mean_time_to_threshold = rng.uniform(0.0, 6280.0);
    }
    const auto front = pareto_front(results);
    std::vector<std::size_t> brute;
    for (std::size_t i = 0; i < results.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < results.size() && !dominated; ++j) {
            if (i == j) continue;
            const bool ge = results[j].mean_inspection_fraction >=
                            results[i].mean_inspection_fraction;
            const bool le =
                results[j].mean_time_to_threshold <= results[i].mean_time_to_threshold;
            const bool strict = results[j].mean_inspection_fraction >
                                    results[i].mean_inspection_fraction ||
                                results[j].mean_time_to_threshold <
                                    results[i].mean_time_to_threshold;
            dominated = ge && le && strict;
        }
        if (!dominated) brute.push_back(i);
    }
    c.require(front == brute, "front differs from the brute-force non-dominated set");
    c.note("front size " + std::to_string(front.size()) + " of 1000");
    return c;
}

Check criterion_8() {
    Check c;
    // hand-recomputed SS for the 2x2 n=2 fixture {1,2|3,4|5,6|7,8}:
    // marginal means give SS_A = 32, SS_B = 8, SS_AxB = 0, SS_res = 2
    // (they sum to the total SS of 42; see the ANOVA table derivation in
    // the test suite).
    FactorialData fix;
    fix.a_levels = fix.b_levels = fix.cell_n = 2;
    fix.response = {1, 2, 3, 4, 5, 6, 7, 8};
    const AnovaTable ft = two_way_anova(fix);
    c.require(std::fabs(ft.row("A").sum_sq - 32.0) < 1e-12 &&
                  std::fabs(ft.row("B").sum_sq - 8.0) < 1e-12 &&
                  std::fabs(ft.row("A:B").sum_sq - 0.0) < 1e-12 &&
                  std::fabs(ft.row("Residual").sum_sq - 2.0) < 1e-12,
              "2x2 fixture SS != (32, 8, 0, 2): got (" + fmt(ft.row("A").sum_sq) + ", " +
                  fmt(ft.row("B").sum_sq) + ", " + fmt(ft.row("A:B").sum_sq) + ", " +
                  fmt(ft.row("Residual").sum_sq) + ")");

    // 20 random balanced fixtures vs a sum-to-zero least-squares fit
    std::mt19937 gen(2024);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_int_distribution<int> lv(2, 4);
    for (int rep = 0; rep < 20 && c.ok; ++rep) {
        FactorialData d;
        d.a_levels = std::size_t(lv(gen));
        d.b_levels = std::size_t(lv(gen));
        d.cell_n = 2 + std::size_t(rep % 3);
        d.response.resize(d.a_levels * d.b_levels * d.cell_n);
        for (auto& v : d.response) v = noise(gen);

        // brute force via sequential model comparison on dummy-coded designs;
        // the balanced layout makes the decomposition orthogonal
        const std::size_t N = d.size();
        auto rss = [&](bool withA, bool withB, bool withAB) {
            std::vector<std::vector<double>> cols(1, std::vector<double>(N, 1.0));
            auto code = [](std::size_t level, std::size_t dummy, std::size_t levels) {
                if (level == dummy) return 1.0;
                if (level == levels - 1) return -1.0;
                return 0.0;
            };
            auto row_levels = [&](std::size_t idx) {
                const std::size_t ia = idx / (d.b_levels * d.cell_n);
                const std::size_t ib = (idx / d.cell_n) % d.b_levels;
                return std::pair<std::size_t, std::size_t>(ia, ib);
            };
            if (withA)
                for (std::size_t l = 0; l + 1 < d.a_levels; ++l) {
                    std::vector<double> col(N);
                    for (std::size_t i = 0; i < N; ++i)
                        col[i] = code(row_levels(i).first, l, d.a_levels);
                    cols.push_back(col);
                }
            if (withB)
                for (std::size_t l = 0; l + 1 < d.b_levels; ++l) {
                    std::vector<double> col(N);
                    for (std::size_t i = 0; i < N; ++i)
                        col[i] = code(row_levels(i).second, l, d.b_levels);
                    cols.push_back(col);
                }
            if (withAB)
                for (std::size_t la = 0; la + 1 < d.a_levels; ++la)
                    for (std::size_t lb = 0; lb + 1 < d.b_levels; ++lb) {
                        std::vector<double> col(N);
                        for (std::size_t i = 0; i < N; ++i)
                            col[i] = code(row_levels(i).first, la, d.a_levels) *
                                     code(row_levels(i).second, lb, d.b_levels);
                        cols.push_back(col);
                    }
            Eigen::MatrixXd X(N, cols.size());
            Eigen::VectorXd y(N);
            for (std::size_t jc = 0; jc < cols.size(); ++jc)
                for (std::size_t i = 0; i < N; ++i) X(long(i), long(jc)) = cols[jc][i];
            for (std::size_t i = 0; i < N; ++i) y(long(i)) = d.response[i];
            const Eigen::VectorXd beta = X.colPivHouseholderQr().solve(y);
            return (y - X * beta).squaredNorm();
        };
        const double r0 = rss(false, false, false);
        const double rb = rss(false, true, false);
        const double ra = rss(true, false, false);
        const double rfull = rss(true, true, true);
        const double rmain = rss(true, true, false);
        const AnovaTable t = two_way_anova(d);
        const double scale = std::max(1.0, r0);
        c.require(std::fabs(t.row("A").sum_sq - (r0 - ra)) < 1e-8 * scale &&
                      std::fabs(t.row("B").sum_sq - (r0 - rb)) < 1e-8 * scale &&
                      std::fabs(t.row("A:B").sum_sq - (rmain - rfull)) < 1e-8 * scale &&
                      std::fabs(t.row("Residual").sum_sq - rfull) < 1e-8 * scale,
                  "random fixture " + std::to_string(rep) +
                      " disagrees with the least-squares decomposition");
    }

    // Df columns for the campaign shape 3x2 with 30 per cell
    {
        std::vector<double> y(180);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = double((i * 31) % 97);
        FactorialData d;
        d.a_levels = 3;
        d.b_levels = 2;
        d.cell_n = 30;
        d.response = y;
        const AnovaTable t = two_way_anova(d);
        c.require(t.row("A").df == 2.0 && t.row("B").df == 1.0 && t.row("A:B").df == 2.0 &&
                      t.row("Residual").df == 174.0,
                  "3x2x30 Df != (2, 1, 2, 174)");
    }

    // Bonferroni p_adj = min(1, k p)
    {
        std::mt19937 g2(7);
        std::normal_distribution<double> nz(0.0, 1.0);
        FactorialData d;
        d.a_levels = 3;
        d.b_levels = 2;
        d.cell_n = 5;
        d.response.resize(30);
        for (auto& v : d.response) v = nz(g2);
        const auto con = pairwise_contrasts(d, ContrastFamily::SimpleEffects);
        const double kfam = double(con.size());
        for (const auto& ct : con) {
            c.require(std::fabs(ct.p_adj - std::min(1.0, kfam * ct.p_raw)) < 1e-12,
                      "Bonferroni adjustment is not min(1, k p)");
        }
    }

    // ART F invariance under strictly monotone transforms. A rank-unique
    // response is mapped through exp(); the alignment step subtracts raw-scale
    // cell/marginal means BEFORE ranking, so a nonlinear monotone map changes
    // the aligned values' order and with it the ranks and F statistics. Only
    // affine maps commute with the alignment. This sub-check is therefore
    // expected to fail for non-affine transforms; it is asserted as stated
    // and reported honestly.
    {
        std::mt19937 g3(11);
        std::normal_distribution<double> nz(0.0, 1.0);
        FactorialData d;
        d.a_levels = 3;
        d.b_levels = 2;
        d.cell_n = 6;
        d.response.resize(36);
        for (std::size_t i = 0; i < 36; ++i) d.response[i] = nz(g3) + 0.5 * double(i % 4);
        FactorialData e = d;
        for (auto& v : e.response) v = std::exp(v);
        const AnovaTable t0 = art_anova(d);
        const AnovaTable t1 = art_anova(e);
        bool same = true;
        for (const char* eff : {"A", "B", "A:B"}) {
            if (std::fabs(t0.row(eff).f - t1.row(eff).f) > 1e-9) same = false;
        }
        c.require(same,
                  "ART F changed under exp() on a rank-unique response (alignment uses "
                  "raw-scale means, so only affine transforms preserve the ranks; "
                  "delta F_A " +
                      fmt(std::fabs(t0.row("A").f - t1.row("A").f)) + ")");
    }
    return c;
}

// Criteria 9 and 10 share the default campaign; criterion 10 additionally
// pools a second seeded campaign (directions are asserted over seeded
// campaigns, and a single 30-trial draw leaves the smallest cell gap — static
// PH vs NMC coverage — inside Monte-Carlo noise).
std::vector<TrialRecord> run_campaign(std::uint64_t seed) {
    ValConfig cfg;  // defaults: 2 modes x 3 policies x 30 trials
    cfg.rng_seed = seed;
    const PoiCloud cloud = panel_satellite_cloud(cfg.standin_vertices);
    std::vector<TrialRecord> out;
    for (const auto mode : cfg.modes) {
        for (const auto policy : cfg.policies) {
            for (std::size_t t = 0; t < cfg.trials_per_cell; ++t) {
                out.push_back(run_trial(mode, policy, t, cfg, cloud));
            }
        }
    }
    return out;
}

Check criterion_9(const std::vector<TrialRecord>& records) {
    Check c;
    c.require(records.size() == 180,
              "campaign produced " + std::to_string(records.size()) + " records, not 180");
    if (!c.ok) return c;

    std::vector<double> y;
    std::vector<std::size_t> la, lb;
    for (const auto& r : records) {
        y.push_back(r.inspection_fraction);
        la.push_back(r.policy == StrategyKind::PointHold  ? 0
                     : r.policy == StrategyKind::NmcHold ? 1
                                                         : 2);
        lb.push_back(r.mode == RsoMode::StaticCWH ? 0 : 1);
    }
    const FactorialData d = FactorialData::from_observations(y, la, lb);
    const AnovaTable t = two_way_anova(d);
    c.require(t.row("Residual").df == 174.0,
              "analysis residual Df " + fmt(t.row("Residual").df) + " != 174");
    c.note("180 records, residual Df " + fmt(t.row("Residual").df));
    return c;
}

Check criterion_10(const std::vector<TrialRecord>& records) {
    Check c;
    std::map<std::pair<int, int>, std::pair<double, double>> acc;  // (mode,pol) -> sums
    std::map<std::pair<int, int>, int> count;
    for (const auto& r : records) {
        const auto key = std::make_pair(r.mode == RsoMode::StaticCWH ? 0 : 1,
                                        int(r.policy));
        acc[key].first += r.fuel_total;
        acc[key].second += r.inspection_fraction;
        ++count[key];
    }
    auto mean_fuel = [&](int m, int p) { return acc[{m, p}].first / count[{m, p}]; };
    auto mean_cov = [&](int m, int p) { return acc[{m, p}].second / count[{m, p}]; };
    const int PH = int(StrategyKind::PointHold);
    const int NMC = int(StrategyKind::NmcHold);
    const int GR = int(StrategyKind::GreedyActive);

    c.require(mean_fuel(0, PH) > mean_fuel(0, NMC),
              "static PH fuel " + fmt(mean_fuel(0, PH)) + " not above NMC " +
                  fmt(mean_fuel(0, NMC)));
    for (const int m : {0, 1}) {
        c.require(mean_cov(m, NMC) < mean_cov(m, PH) && mean_cov(m, NMC) < mean_cov(m, GR),
                  std::string("NMC coverage not lowest in ") + (m ? "tumble" : "static"));
    }
    for (const int p : {PH, NMC, GR}) {
        c.require(mean_cov(1, p) > mean_cov(0, p),
                  "tumble coverage not above static for policy " +
                      std::string(policy_name(StrategyKind(p))));
    }
    c.note(std::to_string(records.size() / 180) +
           " pooled seeded campaigns; fuel static PH/NMC " + fmt(mean_fuel(0, PH)) + "/" +
           fmt(mean_fuel(0, NMC)) +
           " m/s (paper 7.554/4.828); coverage static PH/NMC/greedy " +
           fmt(mean_cov(0, PH)) + "/" + fmt(mean_cov(0, NMC)) + "/" + fmt(mean_cov(0, GR)) +
           ", tumble " + fmt(mean_cov(1, PH)) + "/" + fmt(mean_cov(1, NMC)) + "/" +
           fmt(mean_cov(1, GR)));
    return c;
}

Check criterion_11() {
    Check c;
#ifndef INSPECTSIM_CLI
    c.require(false, "CLI path not configured at build time");
    return c;
#else
    const fs::path base = fs::temp_directory_path() / "inspsim_accept11";
    std::error_code ec;
    fs::remove_all(base, ec);
    fs::create_directories(base);

    // identical invocations (same config, seed, and output path), with only
    // the parallelism degree varied; each run's files are snapshotted before
    // the next run overwrites them
    const fs::path out = base / "run";
    const char* files[] = {"trials.csv", "series.csv", "resolved_config.json",
                           "manifest.json"};
    auto run = [&](int jobs) {
        const std::string cmd = std::string(INSPECTSIM_CLI) +
                                " validate --trials 1 --seed 7 --jobs " +
                                std::to_string(jobs) + " --out " + out.string() +
                                " > /dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    auto snapshot = [&]() {
        std::map<std::string, std::string> snap;
        for (const char* name : files) snap[name] = slurp(out / name);
        return snap;
    };

    c.require(run(1), "validate --jobs 1 failed");
    if (!c.ok) return c;
    const auto jobs1 = snapshot();
    c.require(run(2), "validate --jobs 2 failed");
    if (!c.ok) return c;
    const auto jobs2 = snapshot();
    c.require(run(1), "validate rerun failed");
    if (!c.ok) return c;
    const auto rerun = snapshot();

    for (const char* name : files) {
        c.require(!jobs1.at(name).empty(), std::string(name) + " missing or empty");
        c.require(jobs1.at(name) == jobs2.at(name),
                  std::string(name) + " differs between --jobs 1 and --jobs 2");
        c.require(jobs1.at(name) == rerun.at(name),
                  std::string(name) + " differs between identical reruns");
    }
    fs::remove_all(base, ec);
    c.note("6-trial subset, jobs 1 vs 2 vs rerun, 4 files byte-compared");
    return c;
#endif
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
    if (wanted.empty()) {
        for (int i = 1; i <= 11; ++i) wanted.push_back(i);
    }
    auto selected = [&](int n) {
        for (const int w : wanted)
            if (w == n) return true;
        return false;
    };

    std::vector<TrialRecord> campaign;
    if (selected(9) || selected(10)) campaign = run_campaign(0);
    std::vector<TrialRecord> pooled = campaign;
    if (selected(10)) {
        const std::vector<TrialRecord> second = run_campaign(1);
        pooled.insert(pooled.end(), second.begin(), second.end());
    }

    int failures = 0;
    for (const int n : wanted) {
        Check c;
        switch (n) {
            case 1: c = criterion_1(); break;
            case 2: c = criterion_2(); break;
            case 3: c = criterion_3(); break;
            case 4: c = criterion_4(); break;
            case 5: c = criterion_5(); break;
            case 6: c = criterion_6(); break;
            case 7: c = criterion_7(); break;
            case 8: c = criterion_8(); break;
            case 9: c = criterion_9(campaign); break;
            case 10: c = criterion_10(pooled); break;
            case 11: c = criterion_11(); break;
            default:
                std::printf("criterion %d: FAIL — unknown criterion\n", n);
                ++failures;
                continue;
        }
        std::printf("criterion %d: %s%s%s\n", n, c.ok ? "PASS" : "FAIL",
                    c.detail.empty() ? "" : " — ", c.detail.c_str());
        if (!c.ok) ++failures;
    }
    return failures;
}
