#pragma once

#include <stdexcept>
#include <string>

namespace pdom {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Parameter set violates a documented precondition.
class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

// |lambda| >= |delta|: the drive cannot be diagonalized away.
class DiagonalizationError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// Susceptibility pair has |X_m1| <= |X_m1dag|; no squeeze transform
// reproduces it.
class NotSqueezeLikeError : public Error {
 public:
  using Error::Error;
};

// Requested squeeze modulus >= 1 (would need infinite r).
class NoPhysicalSqueezingError : public Error {
 public:
  using Error::Error;
};

class DegenerateRouthError : public Error {
 public:
  using Error::Error;
};

class UnstableSystemError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class ZeroTransmissionError : public Error {
 public:
  using Error::Error;
};

class ZeroReflectionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdom
