#include <benchmark/benchmark.h>

#include "dnls/dynamics.hpp"
#include "dnls/experiment.hpp"
#include "dnls/lattice.hpp"
#include "dnls/linearized.hpp"
#include "dnls/modulation.hpp"
#include "dnls/resolvent.hpp"
#include "dnls/solitary.hpp"

using namespace dnls;

static const Nonlinearity kModel = Nonlinearity::affine(6.0, -3.0);

static SolitaryWave wave() { return make_wave(kModel, Branch::plus, 1.6055512754639893); }

static void BM_bessel_row(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bessel_row(static_cast<int>(x) + 60, x));
}
BENCHMARK(BM_bessel_row)->Arg(2)->Arg(40)->Arg(400);

static void BM_free_kernel(benchmark::State& state) {
  const double t = state.range(0) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(free_kernel(t));
}
BENCHMARK(BM_free_kernel)->Arg(1)->Arg(100)->Arg(10000);

static void BM_strang_step(benchmark::State& state) {
  Window w(static_cast<int>(state.range(0)));
  SolitaryWave sw = wave();
  Field f = profile(sw, w);
  const double dt = 0.01;
  FreeKernel k = free_kernel(dt);
  for (auto _ : state) {
    step_strang(f, w, k, dt, kModel);
    benchmark::DoNotOptimize(f.data());
  }
}
BENCHMARK(BM_strang_step)->Arg(500);

static void BM_decompose(benchmark::State& state) {
  SolitaryWave sw = wave();
  Window w(120);
  SymplecticProjection p = make_projection(sw, kModel, w);
  Field chi = make_perturbation(w, p, 0.01, 2.0, 42);
  Field psi(w.size());
  for (int i = 0; i < w.size(); ++i) psi[i] = p.phi[i] + chi[i];
  for (auto _ : state)
    benchmark::DoNotOptimize(decompose(w, kModel, Branch::plus, psi, sw.omega, 0.0));
}
BENCHMARK(BM_decompose);

static void BM_resolvent_kernel(benchmark::State& state) {
  SolitaryWave sw = wave();
  ResolventContext ctx = make_resolvent_context(sw, kModel);
  Window w(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(resolvent_kernel(ctx, cplx(2, 2), w));
}
BENCHMARK(BM_resolvent_kernel)->Arg(100)->Arg(200);

static void BM_det_scan_row(benchmark::State& state) {
  SolitaryWave sw = wave();
  ResolventContext ctx = make_resolvent_context(sw, kModel);
  for (auto _ : state) {
    cplx acc = 0;
    for (int q = -1000; q <= 1000; ++q) acc += det_D(ctx, cplx(3.0, q * 0.01));
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_det_scan_row);

static void BM_op_norm_weighted(benchmark::State& state) {
  Kernel K = Kernel::identity(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(op_norm_weighted(K, 2.0));
}
BENCHMARK(BM_op_norm_weighted)->Arg(150)->Arg(300);

BENCHMARK_MAIN();
