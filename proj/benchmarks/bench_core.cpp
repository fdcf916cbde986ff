#include <benchmark/benchmark.h>

#include "chabauty/chabauty.hpp"
#include "chabauty/cli/generators.hpp"

using namespace chabauty;

namespace {

void BM_Hnf(benchmark::State& state) {
  cli::TrialRng rng(1);
  const auto d = static_cast<std::size_t>(state.range(0));
  QMatrix m(d, 2 * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < 2 * d; ++j) m(i, j) = rng.uniform(-20, 20);
  for (auto _ : state) benchmark::DoNotOptimize(hnf(m));
}
BENCHMARK(BM_Hnf)->Arg(2)->Arg(4)->Arg(6);

void BM_ShortestVector(benchmark::State& state) {
  cli::TrialRng rng(2);
  LatticeBasis b = cli::random_integer_lattice(rng, static_cast<std::size_t>(state.range(0)), -5, 5);
  for (auto _ : state) benchmark::DoNotOptimize(shortest_vector(b));
}
BENCHMARK(BM_ShortestVector)->Arg(2)->Arg(3)->Arg(4);

void BM_CoveringRadius(benchmark::State& state) {
  cli::TrialRng rng(3);
  LatticeBasis b = cli::random_integer_lattice(rng, 2, -5, 5);
  for (auto _ : state) benchmark::DoNotOptimize(covering_radius_upper(dual_lattice(b), Rational(1, 20)));
}
BENCHMARK(BM_CoveringRadius);

void BM_OrthogonalInvolution(benchmark::State& state) {
  cli::TrialRng rng(4);
  const AmbientGroup g(1, 1, 1);
  ElementarySubgroup h = cli::random_subgroup(rng, g);
  for (auto _ : state) benchmark::DoNotOptimize(orthogonal(orthogonal(h)));
}
BENCHMARK(BM_OrthogonalInvolution);

void BM_ChabautyDistance(benchmark::State& state) {
  LatticeBasis z2(QMatrix::identity(2));
  QMatrix e(2, 2);
  e(0, 1) = Rational(3, 32);
  e(1, 0) = Rational(-1, 16);
  ElementarySubgroup h = perturb_sequence(z2, e, 10);
  ElementarySubgroup k = lattice_subgroup(z2);
  MetricParams p(static_cast<long>(state.range(0)), Rational(1, 40));
  for (auto _ : state) benchmark::DoNotOptimize(chabauty_distance(h, k, p));
}
BENCHMARK(BM_ChabautyDistance)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_EnumerateSubgroups(benchmark::State& state) {
  FiniteAbelianGroup g({2, 4, 8});
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_subgroups(g));
}
BENCHMARK(BM_EnumerateSubgroups)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
