#pragma once

#include <stdexcept>
#include <string>

namespace collapsi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text that does not follow the deal/state grammar.
class MalformedText : public Error {
 public:
  using Error::Error;
};

/// A deal whose cards are not exactly {A x4, 2 x4, 3 x4, 4 x2, J x2}.
class MultisetViolation : public Error {
 public:
  using Error::Error;
};

/// A pawn standing on a face-down card.
class PawnOnFaceDown : public Error {
 public:
  using Error::Error;
};

/// Both pawns on the same cell.
class PawnCollision : public Error {
 public:
  using Error::Error;
};

/// Side to move disagrees with the number of plies implied by the mask.
class ParityViolation : public Error {
 public:
  using Error::Error;
};

class IllegalMove : public Error {
 public:
  using Error::Error;
};

/// An operation that requires a terminal (or fresh) state received another.
class InvalidState : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class CheckpointError : public Error {
 public:
  using Error::Error;
};

}  // namespace collapsi
