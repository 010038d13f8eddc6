#include <benchmark/benchmark.h>

#include <vector>

#include "soa/bandit.hpp"

namespace {

using namespace soa;

void BM_Ucb1SelectUpdate(benchmark::State& state) {
  const int arms = static_cast<int>(state.range(0));
  Ucb1Bandit b(0, 2, arms, BanditParams{});
  Rng rng(1);
  std::vector<double> ret(2);
  for (auto _ : state) {
    const ArmId a = b.select(rng);
    ret[0] = uniform01(rng);
    b.update(a, ret);
  }
}
BENCHMARK(BM_Ucb1SelectUpdate)->Arg(2)->Arg(5);

void BM_GrabSelectUpdate(benchmark::State& state) {
  const int arms = static_cast<int>(state.range(0));
  GrabBandit b(0, 2, arms, BanditParams{});
  Rng rng(2);
  for (auto _ : state) {
    const ArmId a = b.select(rng);
    b.update(a, uniform01(rng));
  }
}
BENCHMARK(BM_GrabSelectUpdate)->Arg(2)->Arg(5);

// One opponent-aware node update for n agents with 5 arms each.
void BM_OgaUpdate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<OgaBandit> bandits;
  for (int k = 0; k < n; ++k) bandits.emplace_back(k, n, 5, BanditParams{});
  Rng rng(3);
  std::vector<ArmId> chosen(n);
  std::vector<double> returns(n);
  for (auto _ : state) {
    for (int k = 0; k < n; ++k) {
      chosen[k] = bandits[k].select(rng);
      returns[k] = uniform01(rng) - 0.5;
    }
    oga_update(bandits, chosen, returns);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_OgaUpdate)->DenseRange(2, 7)->Complexity();

}  // namespace
