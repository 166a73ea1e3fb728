// Serial vs OpenMP kernels, with the straightforward references alongside.
//   ./petty_bench --benchmark_filter=Projection
// Set OMP_NUM_THREADS to vary the parallel runs.

#include <benchmark/benchmark.h>

#include "petty/core/grid.hpp"
#include "petty/hyperbolic/hyperbolic.hpp"
#include "petty/spherical/spherical.hpp"
#include "petty/starbody/body_spec.hpp"
#include "petty/starbody/projection.hpp"
#include "petty/starbody/steiner.hpp"
#include "petty/starbody/support.hpp"

using namespace petty;

namespace {

// Rotated ellipse (n = 2) or ellipsoid (n = 3); resolution from the first arg.
StarBody test_body(int dim, int resolution) {
  BodySpec s;
  s.kind = "ellipsoid";
  s.dim = dim;
  s.axes = dim == 2 ? std::vector<double>{1.2, 0.5} : std::vector<double>{1.0, 0.7, 0.5};
  s.rotation_deg = 30.0;
  if (dim == 3) s.rotation_axis = {1.0, 2.0, 0.5};
  return build_body(s, make_shared_grid(dim, resolution));
}

const Vec kDir{0.6, 0.8, 0.0};

template <Exec E>
void Projection(benchmark::State& st) {
  const StarBody k = test_body(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(projection_body(k, E));
}

void ProjectionReference(benchmark::State& st) {
  const StarBody k = test_body(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(projection_body_reference(k));
}

template <Exec E>
void Steiner(benchmark::State& st) {
  const StarBody k = test_body(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(steiner(k, kDir, E));
}

void SteinerReference(benchmark::State& st) {
  const StarBody k = test_body(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(steiner_reference(k, kDir));
}

template <Exec E>
void Support(benchmark::State& st) {
  const StarBody k = test_body(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(support_profile(k, E));
}

template <Exec E>
void SphericalSteiner(benchmark::State& st) {
  const SphericalBody k(test_body(static_cast<int>(st.range(0)), static_cast<int>(st.range(1))));
  for (auto _ : st) benchmark::DoNotOptimize(spherical_steiner(k, kDir, E));
}

template <Exec E>
void SphericalPolarProjection(benchmark::State& st) {
  const SphericalBody k(test_body(static_cast<int>(st.range(0)), static_cast<int>(st.range(1))));
  for (auto _ : st) benchmark::DoNotOptimize(polar_projection_volume(k, E));
}

template <Exec E>
void HyperbolicSteiner(benchmark::State& st) {
  const HyperbolicBody k =
      HyperbolicBody::from_chart(test_body(static_cast<int>(st.range(0)), static_cast<int>(st.range(1))));
  for (auto _ : st) benchmark::DoNotOptimize(hyperbolic_steiner(k, kDir, E));
}

void Sizes(benchmark::internal::Benchmark* b) {
  b->Args({2, 720})->Args({3, 16})->Args({3, 32})->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(Projection<Exec::serial>)->Apply(Sizes);
BENCHMARK(Projection<Exec::parallel>)->Apply(Sizes);
BENCHMARK(ProjectionReference)->Args({2, 720})->Args({3, 16})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(Steiner<Exec::serial>)->Apply(Sizes);
BENCHMARK(Steiner<Exec::parallel>)->Apply(Sizes);
BENCHMARK(SteinerReference)->Args({2, 180})->Args({2, 720})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(Support<Exec::serial>)->Apply(Sizes);
BENCHMARK(Support<Exec::parallel>)->Apply(Sizes);
BENCHMARK(SphericalSteiner<Exec::serial>)->Apply(Sizes);
BENCHMARK(SphericalSteiner<Exec::parallel>)->Apply(Sizes);
BENCHMARK(SphericalPolarProjection<Exec::serial>)->Apply(Sizes);
BENCHMARK(SphericalPolarProjection<Exec::parallel>)->Apply(Sizes);
BENCHMARK(HyperbolicSteiner<Exec::serial>)->Apply(Sizes);
BENCHMARK(HyperbolicSteiner<Exec::parallel>)->Apply(Sizes);

BENCHMARK_MAIN();
