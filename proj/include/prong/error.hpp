#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prong {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed COT text. position is a byte offset into the input.
class ParseError : public Error {
 public:
  enum class Kind { Lexical, Syntax, UnknownSymbol, Arity, RootPosition, TerminalChildren };

  ParseError(Kind kind, const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), kind_(kind), position_(position) {}
  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

// Input violates a structural invariant or an operation precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Valid input outside what the library handles (non-sphere surfaces, boundary moves).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// A coheight-one connection with no matching manifest symbol.
class ClassificationGap : public Error {
 public:
  using Error::Error;
};

class ManifestError : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant; reaching this is a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace prong
