#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "fks/constants.hpp"
#include "fks/defs.hpp"
#include "fks/dynamics.hpp"
#include "fks/fft.hpp"
#include "fks/grid.hpp"
#include "fks/norms.hpp"
#include "fks/rng.hpp"
#include "fks/singular.hpp"

using namespace fks;

namespace {

Field cos_field(const TorusGrid& g, double amp) {
  Field f(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::size_t j = g.d == 1 ? i : i / g.n;
    f.v[i] = 1.0 + amp * std::cos(g.node(j));
  }
  return f;
}

SolverConfig step_config(int d, std::size_t n, std::size_t steps) {
  SolverConfig cfg;
  cfg.grid = TorusGrid(d, n);
  cfg.params = ModelParams(d, 1.0, 1.0, 0.6, 0.1);
  cfg.dt = 1e-3;
  cfg.t_end = double(steps) * cfg.dt;
  cfg.record_every = steps;  // diagnostics only at the endpoints
  return cfg;
}

}  // namespace

static void BM_Fft1D(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  std::vector<std::complex<double>> a(n);
  for (std::size_t j = 0; j < n; ++j) a[j] = {std::cos(0.1 * double(j)), std::sin(0.3 * double(j))};
  for (auto _ : state) {
    fft_pow2(a.data(), n, -1);
    benchmark::DoNotOptimize(a.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n));
}
BENCHMARK(BM_Fft1D)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_Fft2D(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  std::vector<std::complex<double>> a(n * n);
  for (std::size_t j = 0; j < n * n; ++j) a[j] = {std::cos(0.1 * double(j)), 0.0};
  for (auto _ : state) {
    fft2_pow2(a.data(), n, -1);
    benchmark::DoNotOptimize(a.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n * n));
}
BENCHMARK(BM_Fft2D)->Arg(64)->Arg(256);

static void BM_TransformRoundTrip1D(benchmark::State& state) {
  const TorusGrid g(1, std::size_t(state.range(0)));
  const Field f = cos_field(g, 0.5);
  for (auto _ : state) {
    Field back = inverse_transform(transform(f));
    benchmark::DoNotOptimize(back.v.data());
  }
}
BENCHMARK(BM_TransformRoundTrip1D)->Arg(256)->Arg(1024);

// Full integrator step throughput (SBDF2, dealiased quadratic terms).
static void BM_Step1D(benchmark::State& state) {
  const std::size_t steps = 32;
  const SolverConfig cfg = step_config(1, std::size_t(state.range(0)), steps);
  const Field u0 = cos_field(cfg.grid, 0.5);
  for (auto _ : state) {
    RunResult rr = run(u0, cfg);
    benchmark::DoNotOptimize(rr.final_state.v.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(steps));
}
BENCHMARK(BM_Step1D)->Arg(128)->Arg(256);

static void BM_Step2D(benchmark::State& state) {
  const std::size_t steps = 16;
  const SolverConfig cfg = step_config(2, std::size_t(state.range(0)), steps);
  const Field u0 = cos_field(cfg.grid, 0.5);
  for (auto _ : state) {
    RunResult rr = run(u0, cfg);
    benchmark::DoNotOptimize(rr.final_state.v.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(steps));
}
BENCHMARK(BM_Step2D)->Arg(64);

static void BM_TorusKernel1D(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(torus_kernel_1d(2.0, 0.37));
}
BENCHMARK(BM_TorusKernel1D);

static void BM_TorusKernel2D(benchmark::State& state) {
  const double y[2] = {0.37, -1.1};
  for (auto _ : state) benchmark::DoNotOptimize(torus_kernel_2d(3.0, y));
}
BENCHMARK(BM_TorusKernel2D);

// Point evaluation of the singular-integral form of the operator.
static void BM_SingularPoint1D(benchmark::State& state) {
  const TorusGrid g(1, 64);
  Rng rng(7);
  const SpectralField u = random_trig_poly(g, 8, 1.0, rng);
  const double x = 0.41;
  for (auto _ : state) benchmark::DoNotOptimize(frac_laplacian_singular(u, 1.0, &x));
}
BENCHMARK(BM_SingularPoint1D);

static void BM_Singular2DBuild(benchmark::State& state) {
  for (auto _ : state) {
    SingularEvaluator2D ev(1.0);
    benchmark::DoNotOptimize(&ev);
  }
}
BENCHMARK(BM_Singular2DBuild)->Unit(benchmark::kMillisecond);

static void BM_Singular2DPoint(benchmark::State& state) {
  const TorusGrid g(2, 32);
  Rng rng(7);
  const SpectralField u = random_trig_poly(g, 8, 1.0, rng);
  const SingularEvaluator2D ev(1.0);
  const double x[2] = {0.41, -0.9};
  for (auto _ : state) benchmark::DoNotOptimize(ev.eval(u, x));
}
BENCHMARK(BM_Singular2DPoint);

static void BM_RefinedMax1D(benchmark::State& state) {
  const TorusGrid g(1, std::size_t(state.range(0)));
  Rng rng(11);
  const SpectralField u = random_trig_poly(g, 12, 1.0, rng);
  for (auto _ : state) {
    Extremum e = refined_max(u);
    benchmark::DoNotOptimize(e.value);
  }
}
BENCHMARK(BM_RefinedMax1D)->Arg(256);

static void BM_HsSeminorm(benchmark::State& state) {
  const TorusGrid g(1, 256);
  Rng rng(13);
  const SpectralField u = random_trig_poly(g, 12, 1.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(hs_seminorm(u, 0.5));
}
BENCHMARK(BM_HsSeminorm);

// Double integral over the grid, O(size^2); the cost center of the static
// entropy certificates.
static void BM_Gagliardo1D(benchmark::State& state) {
  const TorusGrid g(1, std::size_t(state.range(0)));
  Rng rng(17);
  const Field f = random_positive_field(g, 6, 1.0, 0.5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(gagliardo_pth_power(f, 0.5, 2.0));
}
BENCHMARK(BM_Gagliardo1D)->Arg(64)->Arg(128);

static void BM_ComputeC(benchmark::State& state) {
  const int d = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_C(d, 1.0));
}
BENCHMARK(BM_ComputeC)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
