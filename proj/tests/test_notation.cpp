#include <gtest/gtest.h>

#include <random>

#include "collapsi/errors.hpp"
#include "collapsi/notation.hpp"
#include "test_support.hpp"

using namespace collapsi;

TEST(Notation, ParsesExampleDeal) {
  const Deal d = parse_deal("A223/4A2J/3A23/J3A4");
  EXPECT_EQ(d.at({0, 0}), Card::Ace);
  EXPECT_EQ(d.at({0, 3}), Card::Three);
  EXPECT_EQ(d.at({1, 0}), Card::Four);
  EXPECT_EQ(d.at({1, 3}), Card::Joker);
  EXPECT_EQ(d.at({3, 0}), Card::Joker);
  EXPECT_EQ(d.at({3, 3}), Card::Four);
  EXPECT_EQ(format_deal(d), "A223/4A2J/3A23/J3A4");
}

TEST(Notation, ParsesGoldenState) {
  const GameState s = parse_state("JA2A/3JA4/2323/34A2 r(0,0) b(1,1) r");
  EXPECT_EQ(s.deal, parse_deal("JA2A/3JA4/2323/34A2"));
  EXPECT_EQ(s.red, (Coord{0, 0}));
  EXPECT_EQ(s.blue, (Coord{1, 1}));
  EXPECT_EQ(s.to_move, Player::Red);
  EXPECT_EQ(s.face_up, kAllFaceUp);
  EXPECT_EQ(s, initial_state(s.deal));
}

TEST(Notation, MaskIsWrittenOnlyWhenCardsAreDown) {
  GameState s = parse_state("JA2A/3JA4/2323/34A2 r(0,0) b(1,1) r");
  EXPECT_EQ(format_state(s), "JA2A/3JA4/2323/34A2 r(0,0) b(1,1) r");
  s = apply_move(s, legal_moves(s).front());
  EXPECT_EQ(format_state(s), "JA2A/3JA4/2323/34A2 mask:FFFE r(0,1) b(1,1) b");
}

TEST(Notation, RoundTripsRandomStates) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const GameState s = collapsi::testing::random_state(rng, static_cast<int>(rng() % 15));
    EXPECT_EQ(parse_state(format_state(s)), s);
  }
}

TEST(Notation, NamedErrors) {
  EXPECT_THROW(parse_deal("AAAAA/223/3A23/J3A4"), MalformedText);
  EXPECT_THROW(parse_deal("A223/4A2J/3A23/J3A"), MalformedText);
  EXPECT_THROW(parse_deal("A223/4A2J/3A23/J3X4"), MalformedText);
  // Five aces.
  EXPECT_THROW(parse_deal("A223/4A2J/3A23/J3AA"), MultisetViolation);
  EXPECT_THROW(parse_deal("AAAA/AAAA/AAAA/AAAA"), MultisetViolation);

  EXPECT_THROW(parse_state("JA2A/3JA4/2323/34A2 r(0,0) b(1,1)"), MalformedText);
  EXPECT_THROW(parse_state("JA2A/3JA4/2323/34A2 r(0,4) b(1,1) r"), MalformedText);
  EXPECT_THROW(parse_state("JA2A/3JA4/2323/34A2 mask:XYZW r(0,0) b(1,1) r"), MalformedText);
  EXPECT_THROW(parse_state("JA2A/3JA4/2323/34A2 r(0,0) b(1,1) x"), MalformedText);
  EXPECT_THROW(parse_state("JA2A/3JA4/2323/34A2 mask:FFFE r(0,0) b(1,1) b"), PawnOnFaceDown);
  EXPECT_THROW(parse_state("JA2A/3JA4/2323/34A2 r(0,0) b(1,1) b"), ParityViolation);
  EXPECT_THROW(parse_state("JA2A/3JA4/2323/34A2 r(1,1) b(1,1) r"), PawnCollision);
}
