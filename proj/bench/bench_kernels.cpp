#include <benchmark/benchmark.h>

#include "branchpoint/kernels.hpp"
#include "branchpoint/qvalued_frequency.hpp"
#include "branchpoint/series_fg.hpp"

using namespace branchpoint;

namespace {

const FgModel& model_for(int K) {
  static std::vector<std::unique_ptr<FgModel>> cache(kMaxSeriesGen + 1);
  if (!cache[K]) cache[K] = std::make_unique<FgModel>(SeriesParams(HausdorffParam(0.5), std::nullopt, K));
  return *cache[K];
}

const EvalPoint kProbe = EvalPoint::at({0.02, -0.31});

void BM_F_serial(benchmark::State& st) {
  const auto& m = model_for(static_cast<int>(st.range(0)));
  auto data = m.power_data();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::power_sum_serial(data, kProbe));
  st.SetItemsProcessed(st.iterations() * ((std::int64_t{2} << st.range(0)) - 2));
}

void BM_F_parallel(benchmark::State& st) {
  const auto& m = model_for(static_cast<int>(st.range(0)));
  auto data = m.power_data();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::power_sum_parallel(data, kProbe));
  st.SetItemsProcessed(st.iterations() * ((std::int64_t{2} << st.range(0)) - 2));
}

void BM_F_tree(benchmark::State& st) {
  const auto& m = model_for(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(F_tree(m, kProbe, true));
}

void BM_G_serial(benchmark::State& st) {
  const auto& m = model_for(static_cast<int>(st.range(0)));
  auto data = m.cos_data();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::cos_product_serial(data, kProbe));
}

void BM_G_parallel(benchmark::State& st) {
  const auto& m = model_for(static_cast<int>(st.range(0)));
  auto data = m.cos_data();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::cos_product_parallel(data, kProbe));
}

void BM_frequency(benchmark::State& st) {
  MinimizerSpec spec{Polynomial::monomial(2), 3, Domain::full_plane};
  FrequencyConfig cfg;
  cfg.parallel = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(frequency(spec, 0.0, 0.5, cfg));
}

}  // namespace

BENCHMARK(BM_F_serial)->DenseRange(12, 20, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_F_parallel)->DenseRange(12, 20, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_F_tree)->DenseRange(12, 20, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_G_serial)->DenseRange(12, 20, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_G_parallel)->DenseRange(12, 20, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_frequency)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
