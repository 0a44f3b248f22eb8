#include <benchmark/benchmark.h>

#include "inspsim/dynamics.hpp"
#include "inspsim/llc.hpp"
#include "inspsim/mc_eval.hpp"
#include "inspsim/sensing.hpp"
#include "inspsim/stats.hpp"

using namespace inspsim;

namespace {

void BM_CwStm(benchmark::State& state) {
    Constants c;
    double dt = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cw_stm(dt, c));
        dt += 1e-6;  // defeat caching of identical inputs
    }
}
BENCHMARK(BM_CwStm);

void BM_SolveTransfer(benchmark::State& state) {
    Constants c;
    const Vec3 a(200.0, 0.0, 0.0);
    const Vec3 b(0.0, 200.0, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_transfer(a, b, 499.0, c));
    }
}
BENCHMARK(BM_SolveTransfer);

void BM_HiddenPointRemoval(benchmark::State& state) {
    const PoiCloud cloud = sphere_cloud(std::size_t(state.range(0)), 10.0);
    const Vec3 vp(200.0, 0.0, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hidden_point_removal(cloud, vp));
    }
}
BENCHMARK(BM_HiddenPointRemoval)->Arg(300)->Arg(1000)->Arg(3000);

void BM_Capture(benchmark::State& state) {
    const PoiCloud cloud = sphere_cloud(1000, 10.0);
    RotState rot;
    CaptureConfig cfg;
    cfg.illum_mode = IllumMode::BlinnPhongEarthShadow;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            capture(cloud, rot, Vec3(200.0, 0.0, 0.0), Vec3(1.0, 0.0, 0.0), 0.1, cfg));
    }
}
BENCHMARK(BM_Capture);

void BM_PlanAndTrack(benchmark::State& state) {
    Constants c;
    const ActionSpace ring = build_waypoint_ring(20, 200.0, c);
    const RelState6 start{ring.waypoints[0], Vec3::Zero()};
    const Vec3 target = ring.waypoints[10];
    const double tof = tof_heuristic(ring.waypoints[0], target, ring, c);
    for (auto _ : state) {
        benchmark::DoNotOptimize(plan_and_track(start, target, tof, 1.0, c));
    }
}
BENCHMARK(BM_PlanAndTrack);

void BM_TwoWayAnova(benchmark::State& state) {
    FactorialData d;
    d.a_levels = 3;
    d.b_levels = 2;
    d.cell_n = 30;
    d.response.resize(180);
    for (std::size_t i = 0; i < d.response.size(); ++i) {
        d.response[i] = double((i * 37) % 101);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(two_way_anova(d));
    }
}
BENCHMARK(BM_TwoWayAnova);

void BM_ArtAnova(benchmark::State& state) {
    FactorialData d;
    d.a_levels = 3;
    d.b_levels = 2;
    d.cell_n = 30;
    d.response.resize(180);
    for (std::size_t i = 0; i < d.response.size(); ++i) {
        d.response[i] = double((i * 37) % 101);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(art_anova(d));
    }
}
BENCHMARK(BM_ArtAnova);

}  // namespace

BENCHMARK_MAIN();
