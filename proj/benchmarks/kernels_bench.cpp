#include <benchmark/benchmark.h>

#include "skewdirac/continuous.hpp"
#include "skewdirac/discrete.hpp"
#include "skewdirac/evolution.hpp"
#include "skewdirac/inverse.hpp"
#include "test_support.hpp"

namespace {

using namespace skewdirac;

AdmissibleQuadruple sample(Index n) {
  testing::Rng rng(42 + static_cast<unsigned>(n));
  return testing::spectral_strong(rng, n, 2, 2);
}

void BM_MatExp(benchmark::State& st) {
  testing::Rng rng(1);
  const Matrix a = testing::random_matrix(rng, st.range(0), st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(mat_exp(a));
}
BENCHMARK(BM_MatExp)->Arg(2)->Arg(6)->Arg(16);

void BM_CareSolve(benchmark::State& st) {
  testing::Rng rng(2);
  const auto phi = testing::random_minimal(rng, st.range(0), 2, 2,
                                           Convention::kContinuous);
  const Matrix b = phi.output().adjoint();
  const Matrix q = phi.input() * phi.input().adjoint();
  for (auto _ : st) benchmark::DoNotOptimize(care_solve(phi.gamma(), b, q));
}
BENCHMARK(BM_CareSolve)->Arg(2)->Arg(6)->Arg(16);

void BM_Potential(benchmark::State& st) {
  const auto q = sample(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(potential(q, 0.7));
}
BENCHMARK(BM_Potential)->Arg(1)->Arg(6);

void BM_PotentialSeq(benchmark::State& st) {
  const auto q = testing::lift_spectrum(sample(4));
  for (auto _ : st) benchmark::DoNotOptimize(potential_seq(q, st.range(0)));
}
BENCHMARK(BM_PotentialSeq)->Arg(10)->Arg(30);

void BM_Weyl(benchmark::State& st) {
  const auto q = sample(st.range(0));
  const auto phi = weyl(q);
  const Complex z(0.3, 1.7);
  for (auto _ : st) benchmark::DoNotOptimize(phi(z));
}
BENCHMARK(BM_Weyl)->Arg(1)->Arg(6);

void BM_ReconstructContinuous(benchmark::State& st) {
  testing::Rng rng(3);
  const auto phi = testing::random_minimal(rng, st.range(0), 2, 2,
                                           Convention::kContinuous);
  for (auto _ : st) benchmark::DoNotOptimize(reconstruct_continuous(phi));
}
BENCHMARK(BM_ReconstructContinuous)->Arg(2)->Arg(6);

void BM_GdhmC(benchmark::State& st) {
  const auto q = sample(4);
  for (auto _ : st) benchmark::DoNotOptimize(gdhm_C(q, 0.5, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_GdhmC)->Arg(0)->Arg(4);

void BM_Vxt(benchmark::State& st) {
  const auto q = sample(4);
  for (auto _ : st) benchmark::DoNotOptimize(vxt(q, 0.5, 0.3, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_Vxt)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
