#pragma once

// Text forms:
//   deal:  "A223/4A2J/3A23/J3A4"  (rows top to bottom, cards from {A,2,3,4,J})
//   state: "<deal> [mask:<4 hex digits>] r(<row>,<col>) b(<row>,<col>) <r|b>"
// Mask bit 4*row+col set means face-up; an omitted mask means all face-up.

#include <string>
#include <string_view>

#include "collapsi/engine.hpp"

namespace collapsi {

char card_char(Card c);

Deal parse_deal(std::string_view text);
std::string format_deal(const Deal& deal);

/// Parses and validates. Throws MalformedText, MultisetViolation,
/// PawnOnFaceDown, PawnCollision or ParityViolation.
GameState parse_state(std::string_view text);

/// The mask is written only when some card is face-down.
std::string format_state(const GameState& state);

std::string format_coord(Coord c);

}  // namespace collapsi
