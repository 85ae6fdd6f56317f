#include "pcost/f2.hpp"

#include <bit>
#include <cassert>

namespace pcost::f2 {

Vector& Vector::operator^=(const Vector& other) {
  assert(n_ == other.n_);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool Vector::none() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

std::size_t Vector::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

long Vector::highest() const {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w]) return static_cast<long>(w * 64 + 63 - std::countl_zero(words_[w]));
  }
  return -1;
}

std::vector<std::size_t> Vector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto bits = words_[w];
    while (bits) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.cols_[i].set(i);
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, std::vector<Vector> cols) {
  Matrix m;
  m.rows_ = rows;
  for ([[maybe_unused]] const auto& c : cols) assert(c.size() == rows);
  m.cols_ = std::move(cols);
  return m;
}

Vector Matrix::apply(const Vector& x) const {
  assert(x.size() == cols());
  Vector out(rows_);
  for (auto j : x.support()) out ^= cols_[j];
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  Matrix out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) out.cols_[j] = a.apply(b.cols_[j]);
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& c : cols_)
    if (c.any()) return false;
  return true;
}

std::size_t Matrix::rank() const {
  Reducer r(rows_, 0);
  for (const auto& c : cols_) r.insert(c, Vector(0));
  return r.rank();
}

std::vector<Vector> Matrix::kernel() const {
  Reducer r(rows_, cols());
  std::vector<Vector> out;
  for (std::size_t j = 0; j < cols(); ++j) {
    Vector v = cols_[j];
    Vector tag = Vector::unit(cols(), j);
    r.reduce(v, tag);
    if (v.none())
      out.push_back(std::move(tag));
    else
      r.insert(std::move(v), std::move(tag));
  }
  return out;
}

void Reducer::reduce(Vector& v, Vector& tag) const {
  for (long top = v.highest(); top >= 0; top = v.highest()) {
    long row = pivot_row_[static_cast<std::size_t>(top)];
    if (row < 0) return;
    v ^= rows_[static_cast<std::size_t>(row)].vec;
    tag ^= rows_[static_cast<std::size_t>(row)].tag;
  }
}

bool Reducer::insert(Vector v, Vector tag) {
  assert(v.size() == dim_ && tag.size() == tag_width_);
  reduce(v, tag);
  long top = v.highest();
  if (top < 0) return false;
  pivot_row_[static_cast<std::size_t>(top)] = static_cast<long>(rows_.size());
  rows_.push_back({std::move(v), std::move(tag)});
  return true;
}

bool Reducer::contains(Vector v) const {
  Vector tag(tag_width_);
  reduce(v, tag);
  return v.none();
}

std::optional<Vector> Reducer::coordinates(Vector v) const {
  Vector tag(tag_width_);
  reduce(v, tag);
  if (v.any()) return std::nullopt;
  return tag;
}

QuotientBasis::QuotientBasis(std::size_t dim, const std::vector<Vector>& relations,
                             const std::vector<Vector>& candidates)
    : reducer_(dim, candidates.size()), candidate_to_basis_(candidates.size(), -1) {
  for (const auto& r : relations) reducer_.insert(r, Vector(candidates.size()));
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (reducer_.insert(candidates[k], Vector::unit(candidates.size(), k))) {
      candidate_to_basis_[k] = static_cast<long>(basis_.size());
      basis_.push_back(candidates[k]);
    }
  }
}

std::optional<Vector> QuotientBasis::coordinates(const Vector& v) const {
  if (v.size() != reducer_.dim()) return std::nullopt;
  auto tag = reducer_.coordinates(v);
  if (!tag) return std::nullopt;
  Vector out(basis_.size());
  for (auto c : tag->support()) out.set(static_cast<std::size_t>(candidate_to_basis_[c]));
  return out;
}

}  // namespace pcost::f2
