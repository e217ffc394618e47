#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eqgeo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented contract (bad file, wrong arity, unknown name).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ArityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : ValidationError(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A search ran past its configured element budget without deciding.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// The backend has no exact method for the requested question.
class Undecided : public Error {
 public:
  using Error::Error;
};

}  // namespace eqgeo
