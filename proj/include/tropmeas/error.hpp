#pragma once

#include <stdexcept>
#include <string>

namespace tropmeas {

/// Base of every error the library throws for invalid input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid metric data or an operation mixing incompatible spaces.
class SpaceError : public Error {
 public:
  using Error::Error;
};

class MeasureError : public Error {
 public:
  enum class Kind {
    kEmptySupport,
    kNonFiniteWeight,
    kNotNormalized,
    kUnknownPoint,
    kSpaceMismatch,
    kUndefinedMap,
    kInvalidArgument,
  };

  MeasureError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace tropmeas
