#include <benchmark/benchmark.h>

#include "kappa/hopf.hpp"
#include "kappa/pheno.hpp"
#include "kappa/twist.hpp"

using namespace kappa;

static void BM_SeriesExp(benchmark::State& state) {
  auto R = make_ring({"a", "b"}, static_cast<int>(state.range(0)));
  auto u = TruncSeries::h(R) * (TruncSeries::var(R, "a") + TruncSeries::var(R, "b"));
  for (auto _ : state) benchmark::DoNotOptimize(exp(u));
}
BENCHMARK(BM_SeriesExp)->Arg(4)->Arg(8)->Arg(12);

static void BM_BuildTwist(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_twist(TwistFamily::jordanian, 1, n));
}
BENCHMARK(BM_BuildTwist)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_StarProduct(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto t = build_twist(TwistFamily::abelian, mpq_class(1, 2), n);
  auto f = WeylElement::x(0, n) * WeylElement::x(1, n), g = WeylElement::x(1, n) * WeylElement::x(2, n);
  for (auto _ : state) benchmark::DoNotOptimize(star_product(t, f, g));
}
BENCHMARK(BM_StarProduct)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Cocycle(benchmark::State& state) {
  auto t = build_twist(TwistFamily::jordanian, 3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_cocycle(t));
}
BENCHMARK(BM_Cocycle)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_HopfAxiomsClassical(benchmark::State& state) {
  auto s = build_kappa_classical(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_hopf_axioms(s));
}
BENCHMARK(BM_HopfAxiomsClassical)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_CosmoIntegral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cosmo_integral(2, 3.0));
}
BENCHMARK(BM_CosmoIntegral);

BENCHMARK_MAIN();
