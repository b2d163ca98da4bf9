#pragma once

#include <stdexcept>
#include <string>

namespace msle {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configuration point sits on the pole of a Möbius map.
class PoleHit : public Error {
 public:
  using Error::Error;
};

/// A map or a time step destroyed the strict ordering of marked points.
class OrderBroken : public Error {
 public:
  using Error::Error;
};

/// Two marked points are closer than the degeneracy threshold.
class Degenerate : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// An interface walk did not end at a marked point.
class TracerError : public Error {
 public:
  using Error::Error;
};

}  // namespace msle
