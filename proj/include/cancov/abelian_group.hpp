#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "cancov/integer.hpp"

namespace cancov {

/// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols = 0);
  static IntMatrix from_points(const std::vector<Point>& rows, std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Integer> row(std::size_t i) const;
  std::vector<Integer> col(std::size_t j) const;
  std::vector<Integer> apply(const std::vector<Integer>& x) const;

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& other) const;
  bool operator==(const IntMatrix& other) const = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& factor);
  void add_col(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  /// Exact determinant (fraction-free elimination); square matrices only.
  Integer determinant() const;
  bool is_diagonal() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct SmithForm {
  IntMatrix U;  // unimodular, rows x rows
  IntMatrix D;  // diagonal, D = U * A * V
  IntMatrix V;  // unimodular, cols x cols
  std::size_t rank = 0;
  std::vector<Integer> diagonal() const;
};

/// Smith normal form with deterministic pivoting: the pivot is the entry of
/// smallest nonzero absolute value in the trailing block, ties broken by
/// lexicographic (row, col) position. Diagonal entries are nonnegative and
/// form a divisibility chain.
SmithForm smith_normal_form(const IntMatrix& A);

/// Inverse of a unimodular matrix. Raises InvalidArgument otherwise.
IntMatrix unimodular_inverse(const IntMatrix& U);

/// An element of a finitely generated abelian group in normal-form
/// coordinates: torsion residues first, then free coordinates.
struct GroupElement {
  std::vector<Integer> coords;
  bool operator==(const GroupElement& other) const = default;
  auto operator<=>(const GroupElement& other) const {
    if (coords.size() != other.coords.size()) return coords.size() <=> other.coords.size();
    for (std::size_t i = 0; i < coords.size(); ++i) {
      int c = cmp(coords[i], other.coords[i]);
      if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }
};

/// Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k, d_i >= 2,
/// presented as the cokernel of an integer matrix. `basis_change` maps
/// ambient coordinates to normal-form coordinates; `lift_matrix` maps normal
/// form coordinates back to a preimage in the ambient lattice.
class FgAbelianGroup {
public:
  FgAbelianGroup() = default;

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& invariant_factors() const { return invariant_factors_; }
  std::size_t ambient_rank() const { return basis_change_.cols(); }
  const IntMatrix& basis_change() const { return basis_change_; }
  std::size_t num_coords() const { return invariant_factors_.size() + free_rank_; }
  bool is_trivial() const { return num_coords() == 0; }

  GroupElement zero() const;
  GroupElement project(const std::vector<Integer>& ambient) const;
  GroupElement project(const Point& ambient) const;
  std::vector<Integer> lift(const GroupElement& g) const;

  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement scale(const Integer& s, const GroupElement& a) const;
  GroupElement sub(const GroupElement& a, const GroupElement& b) const {
    return add(a, negate(b));
  }
  bool is_zero(const GroupElement& a) const;

  /// Exact order; nullopt means infinite (some free coordinate is nonzero).
  std::optional<Integer> order(const GroupElement& a) const;

  /// "0", "Z", "Z_6", "Z^2 x Z_2 x Z_4".
  std::string describe() const;
  /// "3" for a single coordinate, "(1,0)" otherwise.
  std::string format(const GroupElement& a) const;

  friend FgAbelianGroup cokernel(const IntMatrix& A);

private:
  GroupElement reduce(std::vector<Integer> coords) const;

  std::size_t free_rank_ = 0;
  std::vector<Integer> invariant_factors_;
  IntMatrix basis_change_;
  IntMatrix lift_matrix_;
};

/// Z^rows / image(A) for a lattice map A: Z^cols -> Z^rows. Sign normalization:
/// the first nonzero ambient entry of every free coordinate row is positive,
/// and every torsion row is negated when that makes its first nonzero residue
/// smaller.
FgAbelianGroup cokernel(const IntMatrix& A);

/// Free alias of FgAbelianGroup::order.
std::optional<Integer> element_order(const GroupElement& g, const FgAbelianGroup& G);

}  // namespace cancov
