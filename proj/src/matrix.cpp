#include "cascade/matrix.hpp"

#include <utility>

#include "cascade/error.hpp"

namespace cascade {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

// Forward elimination with row pivoting on the first nonzero entry.
// Works in place on `m`; returns the pivot columns in row order.
std::vector<std::size_t> row_echelon(RMatrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    }
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RVector RVector::slice(std::size_t offset, std::size_t count) const {
  require(offset + count <= size(), "slice out of range");
  return RVector(std::vector<Rational>(data_.begin() + offset,
                                       data_.begin() + offset + count));
}

Rational RVector::dot(const RVector& other) const {
  require(size() == other.size(), "dot: length " + std::to_string(size()) +
                                      " vs " + std::to_string(other.size()));
  Rational acc = 0;
  for (std::size_t i = 0; i < size(); ++i) acc += data_[i] * other.data_[i];
  return acc;
}

RVector operator+(const RVector& a, const RVector& b) {
  require(a.size() == b.size(), "vector sum length mismatch");
  RVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RVector operator-(const RVector& a, const RVector& b) {
  require(a.size() == b.size(), "vector difference length mismatch");
  RVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RVector operator*(const Rational& s, const RVector& v) {
  RVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

std::string to_string(const RVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

RMatrix::RMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RMatrix RMatrix::identity(std::size_t n) {
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RMatrix RMatrix::from_rows(const std::vector<RVector>& rows,
                           std::size_t cols) {
  RMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols,
            "row " + std::to_string(i + 1) + " has " +
                std::to_string(rows[i].size()) + " entries, expected " +
                std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RVector RMatrix::row(std::size_t i) const {
  RVector out(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
  return out;
}

RVector RMatrix::col(std::size_t j) const {
  RVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

RMatrix RMatrix::transpose() const {
  RMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RMatrix RMatrix::select_rows(std::span<const std::size_t> indices) const {
  RMatrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(indices[i], j);
  return out;
}

RMatrix RMatrix::select_cols(std::span<const std::size_t> indices) const {
  RMatrix out(rows_, indices.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < indices.size(); ++j)
      out(i, j) = (*this)(i, indices[j]);
  return out;
}

RVector RMatrix::operator*(const RVector& x) const {
  require(x.size() == cols_, "matrix-vector: " + std::to_string(cols_) +
                                 " columns vs vector length " +
                                 std::to_string(x.size()));
  RVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
    out[i] = acc;
  }
  return out;
}

std::optional<RVector> solve_linear_system(const RMatrix& a, const RVector& b) {
  const std::size_t n = a.rows();
  require(a.cols() == n, "solve_linear_system: matrix is not square");
  require(b.size() == n, "solve_linear_system: rhs length mismatch");

  RMatrix aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  if (row_echelon(aug, n).size() < n) return std::nullopt;

  RVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc = aug(i, n);
    for (std::size_t j = i + 1; j < n; ++j) acc -= aug(i, j) * x[j];
    x[i] = acc / aug(i, i);
  }
  return x;
}

std::optional<RMatrix> invert(const RMatrix& a) {
  const std::size_t n = a.rows();
  require(a.cols() == n, "invert: matrix is not square");
  RMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  if (row_echelon(aug, n).size() < n) return std::nullopt;
  // Back-substitute to reduced form.
  for (std::size_t i = n; i-- > 0;) {
    const Rational piv = aug(i, i);
    for (std::size_t j = i; j < 2 * n; ++j) aug(i, j) /= piv;
    for (std::size_t k = 0; k < i; ++k) {
      if (sgn(aug(k, i)) == 0) continue;
      const Rational f = aug(k, i);
      for (std::size_t j = i; j < 2 * n; ++j) aug(k, j) -= f * aug(i, j);
    }
  }
  RMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::size_t rank(const RMatrix& a) {
  RMatrix work = a;
  return row_echelon(work, work.cols()).size();
}

std::size_t affine_dimension(std::span<const RVector> points) {
  if (points.empty()) {
    throw Error(ErrorCode::EmptyInput, "affine_dimension of an empty set");
  }
  const std::size_t dim = points.front().size();
  std::vector<RVector> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    require(points[i].size() == dim, "affine_dimension: mixed dimensions");
    diffs.push_back(points[i] - points.front());
  }
  if (diffs.empty()) return 0;
  return rank(RMatrix::from_rows(diffs, dim));
}

}  // namespace cascade
