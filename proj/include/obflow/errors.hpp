#ifndef OBFLOW_ERRORS_HPP
#define OBFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace obflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The relaxation time is too small for the two-mode formulas.
class DegenerateLambda : public Error {
 public:
  using Error::Error;
};

/// A bracket that must be real came out with a non-negligible imaginary part.
class NonRealResult : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrder : public Error {
 public:
  using Error::Error;
};

class NonFiniteIntegrand : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class StencilOutOfDomain : public Error {
 public:
  using Error::Error;
};

class OutsideAsymptoticRegime : public Error {
 public:
  using Error::Error;
};

}  // namespace obflow

#endif  // OBFLOW_ERRORS_HPP
