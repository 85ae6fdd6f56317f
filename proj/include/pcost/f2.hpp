#pragma once

// Dense linear algebra over the two-element field.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace pcost::f2 {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static Vector unit(std::size_t n, std::size_t i) {
    Vector v(n);
    v.set(i);
    return v;
  }

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void flip(std::size_t i) { words_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }
  void assign(std::size_t i, bool b) {
    if (b)
      set(i);
    else
      reset(i);
  }

  Vector& operator^=(const Vector& other);
  friend Vector operator^(Vector a, const Vector& b) { return a ^= b; }
  bool operator==(const Vector& other) const = default;

  bool none() const;
  bool any() const { return !none(); }
  std::size_t count() const;
  /// Index of the highest set bit, or -1 for the zero vector.
  long highest() const;
  std::vector<std::size_t> support() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Column-major matrix; column j is the image of the j-th basis vector.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols, Vector(rows)) {}

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::size_t rows, std::vector<Vector> cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }
  bool get(std::size_t i, std::size_t j) const { return cols_[j].test(i); }
  void set(std::size_t i, std::size_t j, bool b) { cols_[j].assign(i, b); }
  const Vector& col(std::size_t j) const { return cols_[j]; }
  Vector& col(std::size_t j) { return cols_[j]; }

  Vector apply(const Vector& x) const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  bool operator==(const Matrix& other) const = default;

  bool is_zero() const;
  std::size_t rank() const;
  /// Basis of the null space.
  std::vector<Vector> kernel() const;

 private:
  std::size_t rows_ = 0;
  std::vector<Vector> cols_;
};

/// Incremental row echelon form keyed by highest set bit. Every stored vector
/// carries a tag recording its coordinates with respect to whatever generating
/// family the caller feeds in, so a reduced vector yields its expansion.
class Reducer {
 public:
  Reducer(std::size_t dim, std::size_t tag_width)
      : dim_(dim), tag_width_(tag_width), pivot_row_(dim, -1) {}

  std::size_t dim() const { return dim_; }
  std::size_t tag_width() const { return tag_width_; }
  std::size_t rank() const { return rows_.size(); }

  /// Reduces until the top bit has no pivot (or the vector vanishes).
  void reduce(Vector& v, Vector& tag) const;
  /// Returns false (and stores nothing) when v is already in the span.
  bool insert(Vector v, Vector tag);
  bool contains(Vector v) const;
  /// Tag of a vector lying in the span, nullopt otherwise.
  std::optional<Vector> coordinates(Vector v) const;

 private:
  struct Row {
    Vector vec;
    Vector tag;
  };
  std::size_t dim_;
  std::size_t tag_width_;
  std::vector<long> pivot_row_;
  std::vector<Row> rows_;
};

/// Basis of span(relations + candidates) / span(relations) chosen greedily
/// from the candidates in order, with coordinates of vectors in that span.
class QuotientBasis {
 public:
  QuotientBasis(std::size_t dim, const std::vector<Vector>& relations, const std::vector<Vector>& candidates);

  std::size_t dim() const { return reducer_.dim(); }
  std::size_t size() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }
  /// Coordinates modulo the relations; nullopt outside the span.
  std::optional<Vector> coordinates(const Vector& v) const;

 private:
  Reducer reducer_;
  std::vector<Vector> basis_;
  std::vector<long> candidate_to_basis_;
};

}  // namespace pcost::f2
