#pragma once

#include <stdexcept>
#include <string>

namespace wgnls {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Scaled or evolved field lost mass across the truncated box.
class MassLeakError : public Error {
 public:
  MassLeakError(const std::string& what, double leak)
      : Error(what), leak_(leak) {}
  double leak() const { return leak_; }

 private:
  double leak_;
};

// Field has no gradient, no potential, or no mass where one is required.
class DegenerateFieldError : public Error {
 public:
  using Error::Error;
};

class ExtrapolationError : public Error {
 public:
  using Error::Error;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

// Raised when the inputs of a check do not satisfy its hypotheses.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace wgnls
