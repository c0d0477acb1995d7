#pragma once

#include <stdexcept>
#include <string>

namespace setflow {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridMismatch : public Error {
 public:
  GridMismatch() : Error("operands live on different direction grids") {}
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// The halfspace intersection of a sample is empty.
class EmptyIntersection : public Error {
 public:
  EmptyIntersection() : Error("halfspace intersection is empty") {}
};

class NegativeScalar : public Error {
 public:
  NegativeScalar() : Error("negative scalar does not map support functions to support functions") {}
};

class InvalidPolygon : public Error {
 public:
  using Error::Error;
};

class InvalidCurve : public Error {
 public:
  using Error::Error;
};

/// The first set is contained in the second, so no realizing direction exists.
class Contained : public Error {
 public:
  Contained() : Error("first set is contained in the second") {}
};

class AsymmetricDistance : public Error {
 public:
  AsymmetricDistance()
      : Error("one-sided distance is smaller than the Hausdorff distance; swap the operands") {}
};

class ZeroFunction : public Error {
 public:
  ZeroFunction() : Error("duality map representatives requested for the zero function") {}
};

class BoundaryIndex : public Error {
 public:
  BoundaryIndex() : Error("difference quotients need an interior time index") {}
};

class Degenerate : public Error {
 public:
  Degenerate() : Error("sets coincide within tolerance") {}
};

class NonFiniteValue : public Error {
 public:
  NonFiniteValue() : Error("right-hand side returned a non-finite value") {}
};

}  // namespace setflow
