#include <benchmark/benchmark.h>

#include "paulibc/oracle.hpp"
#include "paulibc/pseudo.hpp"
#include "paulibc/secular.hpp"
#include "paulibc/spectra.hpp"

#include <cmath>

using namespace pauli;

namespace {

ProblemSpec decoupled_spec() {
  ProblemSpec spec;
  spec.half_width = M_PI / 4.0;
  spec.field = 0.4;
  spec.boundary.a_plus = Mat2::Identity() * Complex(0.0, 1.0);
  spec.boundary.a_minus = Mat2::Identity() * Complex(0.0, 1.0);
  return spec;
}

void BM_CharFunction(benchmark::State& state) {
  const ProblemSpec spec = decoupled_spec();
  Complex lam(2.0, 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(char_function(lam, spec, true));
    lam += Complex(1e-9, 0.0);  // defeat value caching by the optimizer
  }
}
BENCHMARK(BM_CharFunction);

void BM_ShootingDeterminant(benchmark::State& state) {
  const ProblemSpec spec = decoupled_spec();
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(shooting_determinant(Complex(2.0, 0.7), spec, steps));
}
BENCHMARK(BM_ShootingDeterminant)->Arg(256)->Arg(1024)->Arg(4096);

void BM_FindEigenvalues(benchmark::State& state) {
  const ProblemSpec spec = decoupled_spec();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        find_eigenvalues(spec, {-1.0, 9.0, -1.0, 1.0}, 1e-10));
}
BENCHMARK(BM_FindEigenvalues)->Unit(benchmark::kMillisecond);

void BM_SmallestSingularValue(benchmark::State& state) {
  const DiscreteOperator op = discretize(decoupled_spec(), static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(smallest_singular_value(Complex(2.0, 1.0), op, 1e-8));
}
BENCHMARK(BM_SmallestSingularValue)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
