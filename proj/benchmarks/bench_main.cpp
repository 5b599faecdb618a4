#include <benchmark/benchmark.h>

#include "tenrank/decomposition.hpp"
#include "tenrank/degeneration.hpp"
#include "tenrank/families.hpp"
#include "tenrank/persistence.hpp"
#include "tenrank/rates.hpp"

using namespace tenrank;

static void BM_CyclotomicMul(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Cyclotomic a = Cyclotomic::root(m, 1) + Cyclotomic(Rational(2, 3));
  Cyclotomic b = Cyclotomic::root(m, 3) - Cyclotomic(5);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CyclotomicMul)->Arg(5)->Arg(13)->Arg(21);

static void BM_ModeRank(benchmark::State& state) {
  CycTensor t = l_state(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(multilinear_profile(t));
}
BENCHMARK(BM_ModeRank)->DenseRange(2, 5);

// Exact expansion in Q(zeta_r), r = (n-1)(d-1)+1.
static void BM_VerifyL(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  CycTensor t = l_state(d, n);
  CycDecomposition dec = decompose_l(d, n);
  for (auto _ : state) benchmark::DoNotOptimize(verify_decomposition(t, dec));
}
BENCHMARK(BM_VerifyL)->Args({3, 3})->Args({3, 5})->Args({4, 5})->Unit(benchmark::kMillisecond);

static void BM_FamilyRankCertificate(benchmark::State& state) {
  FamilySpec s{static_cast<Family>(state.range(0)), 4, 5};
  for (auto _ : state) benchmark::DoNotOptimize(family_rank_certificate(s));
}
BENCHMARK(BM_FamilyRankCertificate)
    ->Arg(static_cast<int>(Family::L))
    ->Arg(static_cast<int>(Family::M))
    ->Arg(static_cast<int>(Family::MPRIME))
    ->Arg(static_cast<int>(Family::N))
    ->Unit(benchmark::kMillisecond);

static void BM_QubitDecision(benchmark::State& state) {
  FamilySpec s{Family::NONSYM4, 2, 4};
  s.beta = 2;
  CycTensor ns = make_state(s);
  CycTensor d42 = dicke(4, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decide_persistence_qubits(ns));
    benchmark::DoNotOptimize(decide_persistence_qubits(d42));
  }
}
BENCHMARK(BM_QubitDecision)->Unit(benchmark::kMillisecond);

static void BM_Degeneration(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  CycTensor l = l_state(d, 4), n = n_state(d, 4);
  EpsLocalMap maps = compose(canonical_chain_maps(ChainStep::M_TO_N, d, 4), canonical_chain_maps(ChainStep::L_TO_M, d, 4));
  for (auto _ : state) benchmark::DoNotOptimize(verify_degeneration(l, maps, n));
}
BENCHMARK(BM_Degeneration)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_SchmidtProfile(benchmark::State& state) {
  CycTensor t = ghz(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(schmidt_profile(t));
}
BENCHMARK(BM_SchmidtProfile)->DenseRange(3, 6);
BENCHMARK_MAIN();
