// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "sl3lab/kernels.hpp"
#include "sl3lab/slicing.hpp"

using namespace sl3lab;

namespace {

TensorDecomposition random_decomposition(const BlockLayout& layout, std::size_t rank) {
  std::mt19937_64 rng(7);
  std::vector<BlockOperator> a, b;
  for (std::size_t i = 0; i < rank; ++i) {
    a.push_back(BlockOperator::random(layout, rng));
    b.push_back(BlockOperator::random(layout, rng));
  }
  return {std::move(a), std::move(b)};
}

template <bool Parallel>
void BM_SliceNorms(benchmark::State& state) {
  const auto layout = build_layout(LayoutPreset::Tight, static_cast<std::size_t>(state.range(0)));
  const auto t = random_decomposition(layout, 4);
  const auto f = BasisSubset::plane_part(layout, layout.block_count() - 1);
  for (auto _ : state) {
    auto norms = Parallel ? kernels::slice_norms(t, f) : kernels::slice_norms_serial(t, f);
    benchmark::DoNotOptimize(norms.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(layout.total_dim()));
}

template <bool Parallel>
void BM_AverageApply(benchmark::State& state) {
  const auto avg = kernels::AveragingOperator::from_family(standard_family(static_cast<int>(state.range(0))));
  std::vector<double> in(avg.dim, 1.0), out(avg.dim);
  for (std::size_t i = 0; i < avg.dim; ++i) in[i] = static_cast<double>(i % 17) - 8.0;
  for (auto _ : state) {
    if (Parallel)
      kernels::average_apply(avg, in, out);
    else
      kernels::average_apply_serial(avg, in, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(avg.dim));
}

}  // namespace

BENCHMARK(BM_SliceNorms<false>)->Arg(2)->Arg(3);
BENCHMARK(BM_SliceNorms<true>)->Arg(2)->Arg(3);
BENCHMARK(BM_AverageApply<false>)->Arg(7)->Arg(13);
BENCHMARK(BM_AverageApply<true>)->Arg(7)->Arg(13);

BENCHMARK_MAIN();
