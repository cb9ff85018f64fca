// Serial reference kernels vs the OpenMP kernels. Arg(0) is the serial
// reference; Arg(t > 0) runs the parallel kernel capped at t threads.

#include <benchmark/benchmark.h>

#include "esslab/beta.hpp"
#include "esslab/families.hpp"
#include "esslab/montecarlo.hpp"
#include "esslab/parallel.hpp"
#include "esslab/reference.hpp"

using namespace esslab;

namespace {

void thread_args(benchmark::internal::Benchmark* b) {
  b->Arg(0);
  for (int t = 1; t <= std::max(4, parallel::max_threads()); t *= 2) b->Arg(t);
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

const DataPool& normal_pool() {
  static const DataPool pool = [] {
    const GroupShape shape[] = {{5000, 1}};
    return draw_pool(normal_sampler({0.0, 1.0}), shape, derive_stream(1, 0, StreamRole::Pool));
  }();
  return pool;
}

void BM_Bootstrap(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  const StatisticFn stat = normal_statistic({0.5, 12.0, 1.0});
  const Count rows[] = {100};
  const RandomStream s = derive_stream(1, 0, StreamRole::Bootstrap);
  if (threads > 0) parallel::set_threads(threads);
  for (auto _ : state) {
    const McProfile p = threads == 0
                            ? reference::bootstrap_profile(normal_pool(), rows, 100, 10000, stat, s)
                            : bootstrap_profile(normal_pool(), rows, 100, 10000, stat, s);
    benchmark::DoNotOptimize(p.profile.u_bayes);
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_Bootstrap)->Apply(thread_args);

void BM_MonteCarlo(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  const StatisticFn stat = beta_one_statistic({7, 3}, 0.7);
  const SamplerFn sampler = bernoulli_sampler({0.7});
  const GroupShape shape[] = {{100, 1}};
  const RandomStream s = derive_stream(2, 0, StreamRole::Direct);
  if (threads > 0) parallel::set_threads(threads);
  for (auto _ : state) {
    const McProfile p =
        threads == 0 ? reference::estimate_profile_mc(stat, sampler, shape, 100, 10000, s)
                     : estimate_profile_mc(stat, sampler, shape, 100, 10000, s);
    benchmark::DoNotOptimize(p.profile.u_bayes);
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_MonteCarlo)->Apply(thread_args);

void BM_EnumerationTwoSample(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  if (threads > 0) parallel::set_threads(threads);
  for (auto _ : state) {
    const ConcordanceProfile p =
        threads == 0 ? reference::exact_profile_beta_two({4, 6}, {9, 1}, {0.4, 0.4}, 400)
                     : exact_profile_beta_two({4, 6}, {9, 1}, {0.4, 0.4}, 400);
    benchmark::DoNotOptimize(p.u_bayes);
  }
}
BENCHMARK(BM_EnumerationTwoSample)->Apply(thread_args);

void BM_EnumerationOneSample(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  if (threads > 0) parallel::set_threads(threads);
  for (auto _ : state) {
    const ConcordanceProfile p =
        threads == 0 ? reference::exact_profile_beta_one({3, 4}, {0.35}, 0.5, 2000)
                     : exact_profile_beta_one({3, 4}, {0.35}, 0.5, 2000);
    benchmark::DoNotOptimize(p.u_bayes);
  }
}
BENCHMARK(BM_EnumerationOneSample)->Apply(thread_args);

}  // namespace

BENCHMARK_MAIN();
