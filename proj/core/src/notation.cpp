#include "collapsi/notation.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <vector>

#include "collapsi/errors.hpp"

namespace collapsi {

namespace {

Card card_from_char(char ch) {
  switch (ch) {
    case 'A':
    case 'a':
    case '1':
      return Card::Ace;
    case '2':
      return Card::Two;
    case '3':
      return Card::Three;
    case '4':
      return Card::Four;
    case 'J':
    case 'j':
      return Card::Joker;
    default:
      throw MalformedText(std::string("unknown card '") + ch + "'");
  }
}

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

// "r(1,2)" with the given prefix letter.
Coord parse_pawn(std::string_view token, char prefix) {
  const std::string err = "expected " + std::string(1, prefix) + "(<row>,<col>), got '" + std::string(token) + "'";
  if (token.size() != 6 || token[0] != prefix || token[1] != '(' || token[3] != ',' || token[5] != ')') {
    throw MalformedText(err);
  }
  const int row = token[2] - '0';
  const int col = token[4] - '0';
  if (row < 0 || row >= kSide || col < 0 || col >= kSide) throw MalformedText(err);
  return {row, col};
}

std::uint16_t parse_mask(std::string_view token) {
  constexpr std::string_view kPrefix = "mask:";
  if (token.substr(0, kPrefix.size()) != kPrefix || token.size() != kPrefix.size() + 4) {
    throw MalformedText("expected mask:<4 hex digits>, got '" + std::string(token) + "'");
  }
  const auto digits = token.substr(kPrefix.size());
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, 16);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw MalformedText("mask is not hexadecimal: '" + std::string(digits) + "'");
  }
  return static_cast<std::uint16_t>(value);
}

}  // namespace

char card_char(Card c) {
  switch (c) {
    case Card::Ace:
      return 'A';
    case Card::Two:
      return '2';
    case Card::Three:
      return '3';
    case Card::Four:
      return '4';
    case Card::Joker:
      return 'J';
  }
  return '?';
}

Deal parse_deal(std::string_view text) {
  if (text.size() != 19 || text[4] != '/' || text[9] != '/' || text[14] != '/') {
    throw MalformedText("deal must be four groups of four cards separated by '/', got '" + std::string(text) + "'");
  }
  Deal deal;
  int k = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i % 5 == 4) continue;
    deal.cells[k++] = card_from_char(text[i]);
  }
  validate_deal(deal);
  return deal;
}

std::string format_deal(const Deal& deal) {
  std::string out;
  out.reserve(19);
  for (int i = 0; i < kCells; ++i) {
    if (i > 0 && i % kSide == 0) out.push_back('/');
    out.push_back(card_char(deal.cells[i]));
  }
  return out;
}

GameState parse_state(std::string_view text) {
  const auto tokens = split_ws(text);
  if (tokens.size() != 4 && tokens.size() != 5) {
    throw MalformedText("state must read '<deal> [mask:XXXX] r(row,col) b(row,col) <r|b>'");
  }
  GameState s;
  s.deal = parse_deal(tokens[0]);
  std::size_t next = 1;
  s.face_up = kAllFaceUp;
  if (tokens.size() == 5) s.face_up = parse_mask(tokens[next++]);
  s.red = parse_pawn(tokens[next++], 'r');
  s.blue = parse_pawn(tokens[next++], 'b');
  const auto side = tokens[next];
  if (side == "r") {
    s.to_move = Player::Red;
  } else if (side == "b") {
    s.to_move = Player::Blue;
  } else {
    throw MalformedText("side to move must be 'r' or 'b', got '" + std::string(side) + "'");
  }
  validate_state(s);
  return s;
}

std::string format_coord(Coord c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

std::string format_state(const GameState& state) {
  std::ostringstream out;
  out << format_deal(state.deal);
  if (state.face_up != kAllFaceUp) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%04X", static_cast<unsigned>(state.face_up));
    out << " mask:" << buf;
  }
  out << " r" << format_coord(state.red) << " b" << format_coord(state.blue) << ' '
      << (state.to_move == Player::Red ? 'r' : 'b');
  return out.str();
}

}  // namespace collapsi
