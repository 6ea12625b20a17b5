#include "halo/eps_rational.hpp"

#include <benchmark/benchmark.h>

using namespace halo;

namespace {

const EpsRational e = EpsRational::eps();

void BM_EpsMultiply(benchmark::State& state) {
  const EpsRational a = (6 - 5 * e) / (48 - 48 * e);
  const EpsRational b = (2 + e * e) / (3 - e);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_EpsMultiply);

void BM_EpsAdd(benchmark::State& state) {
  const EpsRational a = (6 - 5 * e) / (48 - 48 * e);
  const EpsRational b = (2 + e * e) / (3 - e);
  for (auto _ : state) benchmark::DoNotOptimize(a + b);
}
BENCHMARK(BM_EpsAdd);

void BM_EpsSign(benchmark::State& state) {
  const EpsRational a = (e * e - e) / (1 + e);
  for (auto _ : state) benchmark::DoNotOptimize(a.sign());
}
BENCHMARK(BM_EpsSign);

// Degree grows with the exponent, so this tracks gcd cost on larger polynomials.
void BM_EpsPower(benchmark::State& state) {
  const EpsRational base = (1 + e) / (2 - 3 * e);
  for (auto _ : state) {
    EpsRational acc(Rational(1));
    for (long k = 0; k < state.range(0); ++k) acc *= base;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_EpsPower)->Arg(4)->Arg(16)->Arg(32);

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_eps_rational("(1/8)*(1/3 + e/(2*(1-e)))"));
}
BENCHMARK(BM_Parse);

}  // namespace
