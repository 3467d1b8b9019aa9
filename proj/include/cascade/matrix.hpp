#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cascade/rational.hpp"

namespace cascade {

/// Dense vector of exact rationals. The length is fixed at construction;
/// entries are 0-based.
class RVector {
 public:
  RVector() = default;
  explicit RVector(std::size_t size) : data_(size) {}
  RVector(std::initializer_list<Rational> values) : data_(values) {}
  explicit RVector(std::vector<Rational> values) : data_(std::move(values)) {}

  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  Rational& operator[](std::size_t i) { return data_[i]; }
  const Rational& operator[](std::size_t i) const { return data_[i]; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  std::span<const Rational> view() const noexcept { return data_; }

  /// Sub-vector [offset, offset + count).
  RVector slice(std::size_t offset, std::size_t count) const;

  Rational dot(const RVector& other) const;

  friend bool operator==(const RVector&, const RVector&) = default;

  /// Lexicographic order on entries.
  friend bool operator<(const RVector& a, const RVector& b) {
    return a.data_ < b.data_;
  }

 private:
  std::vector<Rational> data_;
};

RVector operator+(const RVector& a, const RVector& b);
RVector operator-(const RVector& a, const RVector& b);
RVector operator*(const Rational& s, const RVector& v);

/// "(a, b, c)" with rationals as p/q.
std::string to_string(const RVector& v);

/// Row-major dense matrix of rationals with fixed shape.
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  RMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RMatrix identity(std::size_t n);
  static RMatrix from_rows(const std::vector<RVector>& rows,
                           std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  RVector row(std::size_t i) const;
  RVector col(std::size_t j) const;
  RMatrix transpose() const;

  /// Matrix formed by the given rows, in order.
  RMatrix select_rows(std::span<const std::size_t> indices) const;
  /// Matrix formed by the given columns, in order.
  RMatrix select_cols(std::span<const std::size_t> indices) const;

  RVector operator*(const RVector& x) const;

  friend bool operator==(const RMatrix&, const RMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Exact solve of a square system. Empty when A is singular.
/// Throws DimensionMismatch on non-square A or mismatched b.
std::optional<RVector> solve_linear_system(const RMatrix& a, const RVector& b);

/// Exact inverse, empty when singular.
std::optional<RMatrix> invert(const RMatrix& a);

std::size_t rank(const RMatrix& a);

/// Rank of the differences {p_i - p_0}. Throws EmptyInput on an empty list.
std::size_t affine_dimension(std::span<const RVector> points);

}  // namespace cascade
