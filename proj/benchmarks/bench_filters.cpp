#include <benchmark/benchmark.h>

#include "qaf/analysis.hpp"
#include "qaf/filters.hpp"
#include "qaf/random.hpp"
#include "qaf/signals.hpp"

using namespace qaf;

namespace {

QVector random_regressor(Rng& rng, std::size_t n) {
  QVector x(n);
  for (auto& q : x) q = rng.gaussian_quaternion(1.0);
  return x;
}

void BM_HamiltonProduct(benchmark::State& state) {
  Rng rng(1);
  Quaternion a = rng.gaussian_quaternion(1.0);
  const Quaternion b = rng.unit_quaternion();
  for (auto _ : state) {
    a = a * b;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_HamiltonProduct);

void BM_Step(benchmark::State& state) {
  const auto algo = static_cast<filters::Algorithm>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  Rng rng(2);
  filters::FilterState s{QVector(filters::is_widely_linear(algo) ? 4 * n : n), 0};
  const QVector x = random_regressor(rng, n);
  const Quaternion d = rng.gaussian_quaternion(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(filters::step(algo, s, x, d, 1e-6));
  }
  state.SetLabel(std::string(filters::to_string(algo)));
}
BENCHMARK(BM_Step)->ArgsProduct({{0, 1, 2, 3, 4}, {4, 16, 64}});

void BM_RunFilterAr4(benchmark::State& state) {
  const auto y = bench::gen_ar4(10000, 3);
  const filters::FilterConfig cfg{filters::Algorithm::IQLMS, 4, 0.08};
  for (auto _ : state) {
    benchmark::DoNotOptimize(filters::run_filter(cfg, y).squared_error.back());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(y.size()));
}
BENCHMARK(BM_RunFilterAr4);

void BM_QuaternionInverse(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  QMatrix a = QMatrix::identity(n);
  Rng rng(4);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) += 0.1 * rng.gaussian_quaternion(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(inverse(a));
}
BENCHMARK(BM_QuaternionInverse)->Arg(4)->Arg(16)->Arg(32);

void BM_GoverningEigenvalues(benchmark::State& state) {
  const QMatrix R = QMatrix::identity(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analysis::governing_eigenvalues(filters::Algorithm::QLMS, R));
}
BENCHMARK(BM_GoverningEigenvalues)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
