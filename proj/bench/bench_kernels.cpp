// Serial reference kernels against the OpenMP kernels, plus a full step.

#include <benchmark/benchmark.h>

#include <cmath>

#include "eplast/operators.hpp"
#include "eplast/reference.hpp"
#include "eplast/scenarios.hpp"
#include "eplast/simulation.hpp"
#include "eplast/thermal.hpp"

using namespace eplast;

namespace {

Grid grid_of(const benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  return Grid{.nx = n, .ny = n};
}

VectorField swirl(const Grid& g) {
  VectorField v(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Vec2 c = g.center(i, j);
      v(i, j) = {std::sin(3.0 * c.y) * c.x * (1 - c.x), -std::sin(3.0 * c.x) * c.y * (1 - c.y)};
    }
  return v;
}

ScalarField bump(const Grid& g) {
  ScalarField f(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Vec2 c = g.center(i, j);
      f(i, j) = 1.0 + std::exp(-20.0 * ((c.x - 0.4) * (c.x - 0.4) + (c.y - 0.5) * (c.y - 0.5)));
    }
  return f;
}

void BM_gradient_parallel(benchmark::State& st) {
  const VectorField v = swirl(grid_of(st));
  for (auto _ : st) benchmark::DoNotOptimize(gradient(v, Ghost::zero));
}

void BM_gradient_reference(benchmark::State& st) {
  const VectorField v = swirl(grid_of(st));
  for (auto _ : st) benchmark::DoNotOptimize(reference::velocity_gradient(v));
}

void BM_semi_lagrangian_parallel(benchmark::State& st) {
  const Grid g = grid_of(st);
  const VectorField v = swirl(g);
  const ScalarField f = bump(g);
  for (auto _ : st) benchmark::DoNotOptimize(semi_lagrangian(f, v, 0.5 * g.hx()));
}

void BM_semi_lagrangian_reference(benchmark::State& st) {
  const Grid g = grid_of(st);
  const VectorField v = swirl(g);
  const ScalarField f = bump(g);
  for (auto _ : st) benchmark::DoNotOptimize(reference::semi_lagrangian(f, v, 0.5 * g.hx()));
}

void BM_donor_cell_parallel(benchmark::State& st) {
  const Grid g = grid_of(st);
  const VectorField v = swirl(g);
  const ScalarField f = bump(g);
  for (auto _ : st) benchmark::DoNotOptimize(donor_cell_transport(f, v, 0.5 * g.hx()));
}

void BM_donor_cell_reference(benchmark::State& st) {
  const Grid g = grid_of(st);
  const VectorField v = swirl(g);
  const ScalarField f = bump(g);
  for (auto _ : st) benchmark::DoNotOptimize(reference::donor_cell_transport(f, v, 0.5 * g.hx()));
}

void BM_full_step(benchmark::State& st) {
  SolverConfig c = scenario_defaults("shear_heating");
  c.grid = grid_of(st);
  c.dt = 0.5 * c.grid.hx() / c.scenario.amplitude;
  Simulator sim(c);
  for (auto _ : st) benchmark::DoNotOptimize(sim.step());
}

}  // namespace

BENCHMARK(BM_gradient_parallel)->Arg(64)->Arg(128);
BENCHMARK(BM_gradient_reference)->Arg(64)->Arg(128);
BENCHMARK(BM_semi_lagrangian_parallel)->Arg(64)->Arg(128);
BENCHMARK(BM_semi_lagrangian_reference)->Arg(64)->Arg(128);
BENCHMARK(BM_donor_cell_parallel)->Arg(64)->Arg(128);
BENCHMARK(BM_donor_cell_reference)->Arg(64)->Arg(128);
BENCHMARK(BM_full_step)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
