#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcost {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// metric validation

class InvalidMatrix : public Error {
 public:
  using Error::Error;
};

class NonzeroDiagonal : public Error {
 public:
  explicit NonzeroDiagonal(std::size_t i)
      : Error("nonzero diagonal entry at " + std::to_string(i)), index(i) {}
  std::size_t index;
};

class NegativeDistanceError : public Error {
 public:
  NegativeDistanceError(std::size_t i, std::size_t j)
      : Error("negative distance at (" + std::to_string(i) + ", " + std::to_string(j) + ")"),
        i(i), j(j) {}
  std::size_t i, j;
};

class AsymmetryError : public Error {
 public:
  AsymmetryError(std::size_t i, std::size_t j)
      : Error("asymmetric distance at (" + std::to_string(i) + ", " + std::to_string(j) + ")"),
        i(i), j(j) {}
  std::size_t i, j;
};

/// d(i, j) > d(i, k) + d(k, j).
class TriangleViolation : public Error {
 public:
  TriangleViolation(std::size_t i, std::size_t j, std::size_t k)
      : Error("triangle inequality fails: d(" + std::to_string(i) + "," + std::to_string(j) +
              ") > d(" + std::to_string(i) + "," + std::to_string(k) + ") + d(" +
              std::to_string(k) + "," + std::to_string(j) + ")"),
        i(i), j(j), k(k) {}
  std::size_t i, j, k;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class EmptySubset : public Error {
 public:
  using Error::Error;
};

class InvalidMap : public Error {
 public:
  using Error::Error;
};

class InvalidCorrespondence : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search exceeded its enumeration cap.
class TooLarge : public Error {
 public:
  using Error::Error;
};

// filtrations and homology

class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

class ShiftTooSmall : public Error {
 public:
  using Error::Error;
};

class InsufficientMaxDim : public Error {
 public:
  using Error::Error;
};

class ScaleOrder : public Error {
 public:
  using Error::Error;
};

// module algebra

class NegativeMultiplicity : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

// cost

class NotOneLipschitz : public Error {
 public:
  using Error::Error;
};

class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace pcost
