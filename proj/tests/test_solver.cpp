#include <gtest/gtest.h>

#include <random>

#include "collapsi/errors.hpp"
#include "collapsi/notation.hpp"
#include "collapsi/solver.hpp"
#include "collapsi/symmetry.hpp"
#include "test_support.hpp"

using namespace collapsi;
namespace ct = collapsi::testing;

namespace {

const char* kGolden = "JA2A/3JA4/2323/34A2 r(0,0) b(1,1) r";

GameState swap_colours(const GameState& s) {
  GameState t = s;
  std::swap(t.red, t.blue);
  t.to_move = opponent(s.to_move);
  return t;
}

}  // namespace

TEST(Score, RejectsOutOfRangeMagnitudes) {
  EXPECT_THROW(Score(0), OutOfRange);
  EXPECT_THROW(Score(1), OutOfRange);
  EXPECT_THROW(Score(-17), OutOfRange);
  EXPECT_EQ(Score(-2).winner(), Player::Blue);
  EXPECT_EQ(Score(9).face_up(), 9);
}

TEST(SolveScore, GoldenRedWinsInSevenPlies) {
  const GameState s = parse_state(kGolden);
  const SolveResult r = solve_score(s, {.principal_variation = true});
  EXPECT_EQ(r.score.value(), 9);
  EXPECT_EQ(plies_to_end(s, r), 7);
  ASSERT_TRUE(r.best_move);
  ASSERT_TRUE(r.principal_variation);
  EXPECT_EQ(r.principal_variation->size(), 7u);
  GameState at = s;
  for (const Move& m : *r.principal_variation) at = apply_move(at, m);
  EXPECT_TRUE(is_terminal(at));
  EXPECT_EQ(terminal_score(at), 9);
}

TEST(SolveScore, MemoDoesNotChangeResults) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 40; ++i) {
    const GameState s = ct::random_state(rng, static_cast<int>(rng() % 6));
    const SolveResult plain = solve_score(s);
    const SolveResult memo = solve_score(s, {.memo = true});
    EXPECT_EQ(plain.score, memo.score);
    EXPECT_EQ(plain.best_move, memo.best_move);
  }
}

TEST(SolveScore, TerminalPassthrough) {
  GameState s = parse_state(kGolden);
  // Red boxed in on the ace at (0,1) after ten plies: six cards face-up.
  s.red = {0, 1};
  s.blue = {3, 3};
  s.face_up = static_cast<std::uint16_t>(cell_bit(Coord{0, 1}) | cell_bit(Coord{3, 3}) | cell_bit(Coord{2, 0}) |
                                         cell_bit(Coord{2, 2}) | cell_bit(Coord{3, 0}) | cell_bit(Coord{3, 2}));
  s.to_move = Player::Red;
  validate_state(s);
  ASSERT_TRUE(is_terminal(s));
  const SolveResult r = solve_score(s);
  EXPECT_EQ(r.score.value(), -6);
  EXPECT_FALSE(r.best_move);

  const WinResult w = solve_win(s);
  EXPECT_FALSE(w.mover_wins);
  EXPECT_FALSE(w.witness);
}

TEST(SolveScore, EqualsUnprunedMinimax) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 60; ++i) {
    const GameState s = ct::random_state_with_face_up_at_most(rng, 8);
    const int expected = ct::unpruned_minimax(s);
    const SolveResult r = solve_score(s);
    ASSERT_EQ(r.score.value(), expected) << format_state(s);
    if (r.best_move) {
      EXPECT_EQ(ct::unpruned_minimax(apply_move(s, *r.best_move)), expected);
    }
  }
}

TEST(SolveScore, BestMoveIsSmallestOptimalDestination) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 40; ++i) {
    const GameState s = ct::random_state_with_face_up_at_most(rng, 9);
    const SolveResult r = solve_score(s);
    if (!r.best_move) continue;
    for (const Move& m : legal_moves(s)) {
      const int v = ct::unpruned_minimax(apply_move(s, m));
      if (v == r.score.value()) {
        EXPECT_EQ(m.dest, r.best_move->dest) << format_state(s);
        break;
      }
    }
  }
}

TEST(SolveScore, ColourSwapNegatesScore) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 30; ++i) {
    const GameState s = ct::random_state(rng, 2 + static_cast<int>(rng() % 6));
    const GameState t = swap_colours(s);
    // Swapping colours flips parity, so compare the raw searches.
    EXPECT_EQ(solve_value(t), -solve_value(s));
  }
}

TEST(SolveScore, InvariantUnderSymmetry) {
  std::mt19937_64 rng(31);
  const auto& all = all_symmetries();
  for (int i = 0; i < 10; ++i) {
    const GameState s = ct::random_state(rng, static_cast<int>(rng() % 5));
    const int v = solve_value(s);
    for (int k = 0; k < 5; ++k) EXPECT_EQ(solve_value(transform(s, all[rng() % all.size()])), v);
  }
}

TEST(SolveScore, PrincipalVariationIsConsistent) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 10; ++i) {
    const GameState s = ct::random_state(rng, static_cast<int>(rng() % 8));
    const SolveResult r = solve_score(s);
    if (!r.best_move) continue;
    EXPECT_EQ(solve_score(apply_move(s, *r.best_move)).score, r.score);
  }
}

TEST(SolveScore, FreshDealsRedWinsExactlyOddLengths) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 30; ++i) {
    const GameState s = initial_state(ct::shuffled_deal(rng));
    const SolveResult r = solve_score(s);
    const int plies = plies_to_end(s, r);
    EXPECT_EQ(r.score.value() > 0, plies % 2 == 1);
    EXPECT_LE(plies, 14);
  }
}

TEST(SolveWin, GoldenRedHasWinningMove) {
  const GameState s = parse_state(kGolden);
  const WinResult w = solve_win(s);
  EXPECT_TRUE(w.mover_wins);
  ASSERT_TRUE(w.witness);
  EXPECT_GT(solve_score(apply_move(s, *w.witness)).score.value(), 0);
}

TEST(SolveWin, AgreesWithScoreSign) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const GameState s = ct::random_state_with_face_up_at_most(rng, 6 + static_cast<int>(rng() % 5));
    const WinResult w = solve_win(s);
    const int v = solve_value(s);
    const bool mover_wins = (v > 0) == (s.to_move == Player::Red);
    ASSERT_EQ(w.mover_wins, mover_wins) << format_state(s);
    ASSERT_EQ(w.witness.has_value(), mover_wins);
    if (w.witness) {
      const int child = solve_value(apply_move(s, *w.witness));
      EXPECT_EQ(child > 0, s.to_move == Player::Red);
    }
  }
}

TEST(PliesToEnd, ArithmeticAndFreshOnly) {
  const GameState s = parse_state(kGolden);
  EXPECT_EQ(plies_to_end(s, SolveResult{Score(9), std::nullopt, std::nullopt}), 7);
  EXPECT_EQ(plies_to_end(s, SolveResult{Score(-2), std::nullopt, std::nullopt}), 14);
  const GameState later = apply_move(s, legal_moves(s).front());
  EXPECT_THROW(plies_to_end(later, solve_score(later)), InvalidState);
}

TEST(CountGames, TerminalIsOne) {
  GameState s = parse_state(kGolden);
  s.face_up = static_cast<std::uint16_t>(cell_bit(s.red) | cell_bit(s.blue));
  EXPECT_EQ(count_games(s), 1u);
}

TEST(CountGames, MatchesRecursionIdentity) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 30; ++i) {
    const GameState s = ct::random_state(rng, 5 + static_cast<int>(rng() % 4));
    EXPECT_EQ(count_games(s), ct::naive_count_games(s));
    if (is_terminal(s)) continue;
    std::uint64_t sum = 0;
    for (const Move& m : legal_moves(s)) sum += count_games(apply_move(s, m));
    EXPECT_EQ(count_games(s), sum);
  }
}

TEST(CountGames, ExampleDealOrderOfMagnitude) {
  const std::uint64_t n = count_games(initial_state(parse_deal("A223/4A2J/3A23/J3A4")));
  EXPECT_GE(n, 100'000u);
  EXPECT_LT(n, 10'000'000u);
}
