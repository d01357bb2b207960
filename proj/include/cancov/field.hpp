#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cancov/integer.hpp"

namespace cancov {

/// Scalars of the exact fields in scope. Elements of F_p are stored as
/// integers in [0, p); rationals are stored in canonical form.
using Scalar = Rational;
using Vec = std::vector<Scalar>;

/// The rationals (characteristic 0) or a prime field F_p.
class Field {
public:
  Field() = default;
  static Field rationals() { return Field(0); }
  static Field prime(std::int64_t p);

  std::int64_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }

  Scalar normalize(const Scalar& x) const;
  Scalar from_int(std::int64_t v) const { return normalize(Scalar(static_cast<long>(v))); }
  Scalar add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return normalize(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
  Scalar neg(const Scalar& a) const { return normalize(-a); }
  /// Raises NoInverse on zero.
  Scalar inv(const Scalar& a) const;
  Scalar pow(Scalar a, std::uint64_t e) const;
  /// True when the integer n is a unit of the field.
  bool invertible(std::int64_t n) const { return p_ == 0 ? n != 0 : n % p_ != 0; }

  std::string name() const;
  std::string format(const Scalar& a) const;
  bool operator==(const Field& o) const = default;

private:
  explicit Field(std::int64_t p) : p_(p) {}
  std::int64_t p_ = 0;
};

/// Dense matrix over a Field, row-major.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols = 0);
  static Matrix from_cols(const std::vector<Vec>& cols, std::size_t rows = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Scalar>& data() const { return data_; }
  std::vector<Scalar>& data() { return data_; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  Matrix transpose() const;
  bool is_zero() const;
  bool operator==(const Matrix& o) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

namespace linalg {

Matrix multiply(const Field& F, const Matrix& A, const Matrix& B);
Vec apply(const Field& F, const Matrix& A, const Vec& x);
Matrix add(const Field& F, const Matrix& A, const Matrix& B);
Matrix scale(const Field& F, const Scalar& s, const Matrix& A);

struct RowEchelon {
  Matrix reduced;                   // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

RowEchelon rref(const Field& F, const Matrix& A);
std::size_t rank(const Field& F, const Matrix& A);
/// Basis of {x : A x = 0}.
std::vector<Vec> nullspace(const Field& F, const Matrix& A);
/// Some x with A x = b, or nullopt.
std::optional<Vec> solve(const Field& F, const Matrix& A, const Vec& b);
std::optional<Matrix> inverse(const Field& F, const Matrix& A);
Scalar determinant(const Field& F, const Matrix& A);
/// Indices of a maximal linearly independent subset of the given vectors,
/// chosen greedily in order.
std::vector<std::size_t> independent_subset(const Field& F, const std::vector<Vec>& vectors);
/// Reduced basis of the span of the given vectors (rows of the rref).
std::vector<Vec> span_basis(const Field& F, const std::vector<Vec>& vectors);
/// Coordinates of v in terms of `basis` (vectors), nullopt when v lies outside the span.
std::optional<Vec> coordinates(const Field& F, const std::vector<Vec>& basis, const Vec& v);

}  // namespace linalg

}  // namespace cancov
