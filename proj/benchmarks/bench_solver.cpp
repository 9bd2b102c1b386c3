#include <benchmark/benchmark.h>

#include <vector>

#include "collapsi/deals.hpp"
#include "collapsi/notation.hpp"
#include "collapsi/solver.hpp"
#include "collapsi/symmetry.hpp"

using namespace collapsi;

namespace {

std::vector<GameState> fresh_states(std::size_t n) {
  DealRng rng(7);
  std::vector<GameState> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(initial_state(random_deal(rng)));
  return out;
}

void BM_LegalMoves(benchmark::State& state) {
  const auto states = fresh_states(256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(legal_moves(states[i++ & 255]));
  }
}
BENCHMARK(BM_LegalMoves);

void BM_SolveScoreFresh(benchmark::State& state) {
  const auto states = fresh_states(64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_score(states[i++ & 63], {.memo = state.range(0) != 0}));
  }
}
BENCHMARK(BM_SolveScoreFresh)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SolveWinFresh(benchmark::State& state) {
  const auto states = fresh_states(64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_win(states[i++ & 63]));
  }
}
BENCHMARK(BM_SolveWinFresh)->Unit(benchmark::kMillisecond);

void BM_DealAt(benchmark::State& state) {
  std::uint64_t g = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(deal_at(DealIndex::from_global(g)));
    g = (g + 104'729) % enumeration_total();
  }
}
BENCHMARK(BM_DealAt);

void BM_Canonicalize(benchmark::State& state) {
  DealRng rng(3);
  const Deal d = random_deal(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonicalize(d));
  }
}
BENCHMARK(BM_Canonicalize);

void BM_CountGamesExample(benchmark::State& state) {
  const GameState s = initial_state(parse_deal("A223/4A2J/3A23/J3A4"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_games(s));
  }
}
BENCHMARK(BM_CountGamesExample)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
