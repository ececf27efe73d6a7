#include <benchmark/benchmark.h>

#include <cmath>

#include "bext/entanglement.hpp"
#include "bext/fem.hpp"
#include "bext/halfline.hpp"
#include "bext/rotor.hpp"

using namespace bext;

namespace {

const BoundaryUnitary& antidiagonal() {
  static const BoundaryUnitary u = rotor_boundary(kPi / 2, SpinFamily::AntiDiagonal, kPi / 2);
  return u;
}

void bm_spectral_indicator(benchmark::State& state) {
  const auto p = MatchingProblem::rotor(10.0, antidiagonal());
  double e = 1.234;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_indicator(e, p));
    e += 1e-6;
  }
}
BENCHMARK(bm_spectral_indicator);

void bm_find_eigenvalues(benchmark::State& state) {
  const auto p = MatchingProblem::rotor(10.0, antidiagonal());
  ScanOptions opts;
  opts.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_eigenvalues(p, -11.0, 100.0, 0, opts));
}
BENCHMARK(bm_find_eigenvalues)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void bm_fem_solve(benchmark::State& state) {
  const FemProblem p = make_fem_problem(Geometry::Interval, {10.0, -10.0}, antidiagonal(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_lowest(p, 6));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_fem_solve)->Arg(200)->Arg(400)->Arg(800)->Arg(1600)->Unit(benchmark::kMillisecond)->Complexity();

void bm_fem_halfline_cubic(benchmark::State& state) {
  const FemProblem p = make_fem_problem(Geometry::HalfLine, {1.5}, bound_state_boundary(2.0 * std::atan(1.0)), 1600, 40.0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lowest(p, 1));
}
BENCHMARK(bm_fem_halfline_cubic)->Unit(benchmark::kMillisecond);

void bm_entanglement_entropy(benchmark::State& state) {
  const auto st = sweep_state(std::atan(2.0), 1.0, 1.0, 1.0);
  const HybridState s = st.sample(uniform_grid(40.0, static_cast<int>(state.range(0))), 2);
  for (auto _ : state) benchmark::DoNotOptimize(entanglement_entropy(s));
}
BENCHMARK(bm_entanglement_entropy)->Arg(2001)->Arg(400001);

void bm_compat_curve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(compat_curve(5.0, 1000));
}
BENCHMARK(bm_compat_curve);

}  // namespace

BENCHMARK_MAIN();
