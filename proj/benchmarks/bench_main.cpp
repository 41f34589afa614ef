#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "wanderlab/ahlfors_bers.hpp"
#include "wanderlab/herman.hpp"
#include "wanderlab/numerics.hpp"
#include "wanderlab/surgery.hpp"
#include "wanderlab/verify.hpp"

using namespace wanderlab;

namespace {

BeltramiField radial_stretch(int grid_n) {
  BeltramiField mu;
  mu.eval = [](cplx z) {
    if (z == cplx{0.0, 0.0}) return cplx{0.0, 0.0};
    return (1.0 / 3.0) * z / std::conj(z);
  };
  mu.support = {PolarAnnulus{0.0, 1.0, 64, 128}};
  mu.sup_bound = 1.0 / 3.0;
  mu.window = centered_square(4.0);
  mu.grid_n = grid_n;
  return mu;
}

void bm_polar_quadrature(benchmark::State& state) {
  const PolarAnnulus a{0.0, 1.0, static_cast<int>(state.range(0)),
                       static_cast<int>(2 * state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        polar_quadrature([](cplx z) { return z / (z - 3.0); }, a));
  }
  state.SetItemsProcessed(state.iterations() * a.n_r *
                          static_cast<int64_t>(a.n_theta));
}
BENCHMARK(bm_polar_quadrature)->Arg(128)->Arg(256)->Arg(512);

void bm_p_transform_singular(benchmark::State& state) {
  AnnularField chi;
  chi.eval = [](cplx) { return cplx{1.0, 0.0}; };
  chi.support = {PolarAnnulus{0.0, 1.0, static_cast<int>(state.range(0)),
                              static_cast<int>(2 * state.range(0))}};
  // Evaluation point inside the support exercises the singular-cell path.
  for (auto _ : state) {
    benchmark::DoNotOptimize(p_transform(chi, cplx{0.5, 0.25}));
  }
}
BENCHMARK(bm_p_transform_singular)->Arg(128)->Arg(256)->Arg(512);

void bm_t_transform(benchmark::State& state) {
  const BeltramiField mu = radial_stretch(static_cast<int>(state.range(0)));
  const ComplexGridField grid = mu.to_grid();
  for (auto _ : state) {
    benchmark::DoNotOptimize(t_transform(grid, 2));
  }
}
BENCHMARK(bm_t_transform)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void bm_solve_theta(benchmark::State& state) {
  const BeltramiField mu = radial_stretch(static_cast<int>(state.range(0)));
  SolverConfig cfg = SolverConfig::for_field(mu);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_theta(mu, cfg));
  }
}
BENCHMARK(bm_solve_theta)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void bm_interpolation_coefficient(benchmark::State& state) {
  const InterpolationParams p =
      InterpolationParams::make(cplx{0.5, 0.0}, 0.5, cplx{0.3, 0.4});
  double t = 0.0;
  for (auto _ : state) {
    const cplx z = std::polar(p.r + (p.R - p.r) * (0.1 + 0.8 * t), 6.0 * t);
    benchmark::DoNotOptimize(beltrami_of_interpolation(p, z));
    t += 0.001;
    if (t >= 1.0) t = 0.0;
  }
}
BENCHMARK(bm_interpolation_coefficient);

void bm_render_escape(benchmark::State& state) {
  const HermanMap m = build_herman(cplx{-0.5, 0.0});
  const Window w{-3.0, 3.0, -3.0, 3.0};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(render_escape(m, w, n, n, 100, 50.0));
  }
  state.SetItemsProcessed(state.iterations() * n * static_cast<int64_t>(n));
}
BENCHMARK(bm_render_escape)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
