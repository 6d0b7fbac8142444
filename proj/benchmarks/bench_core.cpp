#include <benchmark/benchmark.h>

#include <numbers>

#include "vortex/discrepancy.hpp"
#include "vortex/grid_solver.hpp"
#include "vortex/model.hpp"
#include "vortex/potential.hpp"
#include "vortex/sphere.hpp"
#include "vortex/trajectory.hpp"

using namespace vortex;

namespace {

model::PhysicalParams params() {
    const double phi0 = 30.0 * std::numbers::pi / 180.0;
    return model::derive_params_c0(7.3e-5, 6.39e6, phi0, 1.4, 0.1);
}

trajectory::TrajectoryProblem standard_problem(double horizon_days) {
    const auto p = params();
    trajectory::TrajectoryProblem prob;
    prob.coriolis = model::LPlane{p.l0};
    prob.vortex = potential::gaussian(3.5e3, 1e-9);
    prob.bearing = potential::linear_slope(2e-3, 1e-3, 0.0);
    prob.c0 = p.c0;
    prob.initial = {0.0, {0.0, 0.0}, {-1.0, 1.0}};
    prob.horizon = horizon_days * 86400.0;
    return prob;
}

void bm_grid_step_240(benchmark::State& state) {
    const auto p = params();
    grid::SolverConfig cfg = grid::make_config(p, model::LPlane{p.l0}, 10.0, 1);
    const grid::GridGeometry geom{240, 240, 12.8e3, 12.8e3};
    auto st = grid::initialize_vortex(geom, potential::gaussian(3.5e3, 1e-9),
                                      potential::zero_bearing(), {0.0, 0.0}, cfg);
    for (auto _ : state) {
        st = grid::step(st, cfg);
        benchmark::DoNotOptimize(st.rho.data());
    }
    state.SetItemsProcessed(state.iterations() * 240 * 240);
}
BENCHMARK(bm_grid_step_240)->Unit(benchmark::kMillisecond);

void bm_track_center_240(benchmark::State& state) {
    const auto p = params();
    grid::SolverConfig cfg = grid::make_config(p, model::LPlane{p.l0}, 10.0, 1);
    const grid::GridGeometry geom{240, 240, 12.8e3, 12.8e3};
    const auto st = grid::initialize_vortex(geom, potential::gaussian(3.5e3, 1e-9),
                                            potential::zero_bearing(), {0.0, 0.0}, cfg);
    for (auto _ : state) {
        auto c = grid::track_center(st);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(bm_track_center_240)->Unit(benchmark::kMillisecond);

void bm_integrate_week(benchmark::State& state) {
    const auto prob = standard_problem(7.0);
    trajectory::IntegrateOptions opts;
    for (int h = 0; h <= 7 * 24; ++h) opts.sample_times.push_back(h * 3600.0);
    for (auto _ : state) {
        auto res = trajectory::integrate(prob, opts);
        benchmark::DoNotOptimize(res.states.data());
    }
}
BENCHMARK(bm_integrate_week)->Unit(benchmark::kMillisecond);

void bm_q_field_ring(benchmark::State& state) {
    const auto prob = standard_problem(2.0);
    const auto A = discrepancy::default_A(prob);
    const trajectory::TrajectoryState s{3.6e3, {1e4, -2e4}, {-0.8, 0.9}};
    for (auto _ : state) {
        double acc = 0.0;
        for (int i = 0; i < 128; ++i) {
            const double ang = i * (2.0 * std::numbers::pi / 128.0);
            const Vec2 q = discrepancy::q_field(
                prob, s, {3e5 * std::cos(ang), 3e5 * std::sin(ang)}, A);
            acc += q.x1 + q.x2;
        }
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * 128);
}
BENCHMARK(bm_q_field_ring);

void bm_elliptic_f(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(sphere::elliptic_F(0.63, 0.8));
    }
}
BENCHMARK(bm_elliptic_f);

void bm_sphere_momentum_residual(benchmark::State& state) {
    const auto p = params();
    const sphere::SphericalVortexSpec mixed{0.9e-6, 1.2e-6, 0.7e-6, {}};
    for (auto _ : state) {
        auto r = sphere::spherical_momentum_residual(mixed, p, 0.4, 0.7);
        benchmark::DoNotOptimize(r.scale);
    }
}
BENCHMARK(bm_sphere_momentum_residual);

}  // namespace

BENCHMARK_MAIN();
