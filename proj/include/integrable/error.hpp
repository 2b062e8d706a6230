#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace integrable {

/// Base of every exception thrown by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A jet variable beyond the configured maximum order was produced.
class OrderOverflow : public Error {
 public:
  using Error::Error;
};

/// A shift or potentiation would create a negative jet order or base level.
class OrderUnderflow : public Error {
 public:
  using Error::Error;
};

/// antiderivative() was given an expression outside Im(D).
class NotExact : public Error {
 public:
  using Error::Error;
};

/// Integration by parts got stuck although the Euler test passed.
class NonIntegrableMonomial : public Error {
 public:
  using Error::Error;
};

class NotAMonomial : public Error {
 public:
  using Error::Error;
};

class RootNotExact : public Error {
 public:
  using Error::Error;
};

/// (family, base) outside the supported classification.
class Unsupported : public Error {
 public:
  using Error::Error;
};

class NotProportional : public Error {
 public:
  using Error::Error;
};

class NonlinearInUnknowns : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace integrable
