#pragma once

#include <stdexcept>
#include <string>

namespace agler {

// Argument shape problems: variable counts, vector lengths, index ranges.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed JSON or exact-scalar text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPsdError : public std::runtime_error {
 public:
  NotPsdError(const std::string& what, double eigenvalue)
      : std::runtime_error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const { return eigenvalue_; }

 private:
  double eigenvalue_;
};

class NotIsometricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FaceNotFactorableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedDegreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotUnitaryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace agler
