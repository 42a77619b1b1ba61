#include <benchmark/benchmark.h>

#include "soficlab/distance.hpp"
#include "soficlab/homcount.hpp"
#include "soficlab/stats.hpp"
#include "soficlab/tower.hpp"

using namespace soficlab;

namespace {

FinitePartition half_partition(int n) {
  FinitePartition p;
  p.carrier = n;
  p.block_count = 2;
  p.assign.resize(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) p.assign[static_cast<size_t>(x)] = (x < n / 2) ? 0 : 1;
  return p;
}

void BM_stats(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  MeasureModel m = MeasureModel::finite(cyclic_action(n));
  IndexedPartition p(half_partition(n));
  WordList words = parse_word_list("1,a,A,aa");
  for (auto _ : state) {
    benchmark::DoNotOptimize(stats(m, words, p));
  }
}
BENCHMARK(BM_stats)->Arg(64)->Arg(512)->Arg(4096);

void BM_d_inf_exhaustive(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  MeasureModel a = MeasureModel::finite(cyclic_action(8));
  FiniteAction b = random_action(n, 1, 17);
  IndexedPartition alpha(half_partition(8));
  WordList words = parse_word_list("1,a");
  SearchStrategy s = SearchStrategy::exhaustive();
  for (auto _ : state) {
    benchmark::DoNotOptimize(d_inf(a, b, words, alpha, s));
  }
}
BENCHMARK(BM_d_inf_exhaustive)->Arg(8)->Arg(12)->Arg(16);

void BM_d_inf_local(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  MeasureModel a = MeasureModel::finite(cyclic_action(64));
  FiniteAction b = random_action(n, 1, 23);
  IndexedPartition alpha(half_partition(64));
  WordList words = parse_word_list("1,a,A");
  SearchStrategy s = SearchStrategy::local_search(8, 2000, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(d_inf(a, b, words, alpha, s));
  }
}
BENCHMARK(BM_d_inf_local)->Arg(64)->Arg(256);

void BM_count_homs_exact(benchmark::State& state) {
  FiniteAction a = cyclic_action(4);
  FiniteAction b = cyclic_action(static_cast<int>(state.range(0)));
  IndexedPartition alpha(half_partition(4));
  WordList words = parse_word_list("1,a");
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_homs(MeasureModel::finite(a), alpha, alpha, words,
                                        Rat(1, 4), b, CountMethod::exact()));
  }
}
BENCHMARK(BM_count_homs_exact)->Arg(4)->Arg(6)->Arg(8);

void BM_count_homs_mc(benchmark::State& state) {
  BernoulliModel base;
  base.alphabet = 2;
  base.probs = {Rat(1, 2), Rat(1, 2)};
  base.generator_count = 1;
  MeasureModel coin = MeasureModel::bernoulli(base);
  IndexedPartition coord(CylinderPartition::coordinate(1, 2));
  FiniteAction b = cyclic_action(static_cast<int>(state.range(0)));
  WordList words = parse_word_list("1");
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_homs(coin, coord, coord, words, Rat(1, 20), b,
                                        CountMethod::monte_carlo(2000, 7)));
  }
}
BENCHMARK(BM_count_homs_mc)->Arg(64)->Arg(256);

void BM_fix_ratio(benchmark::State& state) {
  FiniteAction a = random_action(static_cast<int>(state.range(0)), 2, 3);
  GroupWord w = GroupWord::parse("abAB");
  for (auto _ : state) {
    benchmark::DoNotOptimize(fix_ratio(a, w));
  }
}
BENCHMARK(BM_fix_ratio)->Arg(1024)->Arg(65536);

} // namespace

BENCHMARK_MAIN();
