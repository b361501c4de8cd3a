// Serial vs OpenMP kernels on representative Cayley tables.

#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "acg/group_spec.hpp"
#include "acg/kernels.hpp"

namespace {

const char* const kSpecs[] = {"Sym(5)", "GL2(5)", "Dih(250)", "Heis(7) x Cyc(8)"};

const acg::FiniteGroup& group(int i) {
  static std::map<int, acg::FiniteGroup> cache;
  auto it = cache.find(i);
  if (it == cache.end()) it = cache.emplace(i, acg::build_from_spec(kSpecs[i])).first;
  return it->second;
}

void label(benchmark::State& state, int i) {
  state.SetLabel(std::string(kSpecs[i]) + " n=" + std::to_string(group(i).order()));
}

template <bool Omp>
void BM_Associativity(benchmark::State& state) {
  const auto& g = group(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    bool ok = Omp ? acg::kernels::omp::associative_by_generators(g.order(), g.table())
                  : acg::kernels::serial::associative_by_generators(g.order(), g.table());
    benchmark::DoNotOptimize(ok);
  }
  label(state, static_cast<int>(state.range(0)));
}

template <bool Omp>
void BM_LatinSquare(benchmark::State& state) {
  const auto& g = group(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    bool ok = Omp ? acg::kernels::omp::is_latin_square(g.order(), g.table())
                  : acg::kernels::serial::is_latin_square(g.order(), g.table());
    benchmark::DoNotOptimize(ok);
  }
  label(state, static_cast<int>(state.range(0)));
}

template <bool Omp>
void BM_CentralizerMasks(benchmark::State& state) {
  const auto& g = group(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto masks = Omp ? acg::kernels::omp::centralizer_masks(g) : acg::kernels::serial::centralizer_masks(g);
    benchmark::DoNotOptimize(masks.data());
  }
  label(state, static_cast<int>(state.range(0)));
}

template <bool Omp>
void BM_CommutatorSet(benchmark::State& state) {
  const auto& g = group(static_cast<int>(state.range(0)));
  acg::ElementSet all(g.order());
  for (acg::Elem x = 0; x < g.order(); ++x) all.set(x);
  for (auto _ : state) {
    auto s = Omp ? acg::kernels::omp::commutator_set(g, all) : acg::kernels::serial::commutator_set(g, all);
    benchmark::DoNotOptimize(s.words().data());
  }
  label(state, static_cast<int>(state.range(0)));
}

}  // namespace

BENCHMARK(BM_Associativity<false>)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Associativity<true>)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LatinSquare<false>)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LatinSquare<true>)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CentralizerMasks<false>)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CentralizerMasks<true>)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CommutatorSet<false>)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CommutatorSet<true>)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
