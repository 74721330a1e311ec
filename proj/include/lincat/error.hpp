#pragma once

#include <stdexcept>
#include <string>

namespace lincat {

// Base class of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arithmetic between elements of different fields.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

// Malformed input data: unknown names, bad shapes, parse failures.
class InputError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its domain (e.g. a non-covering handed to
// a covering algorithm).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace lincat
