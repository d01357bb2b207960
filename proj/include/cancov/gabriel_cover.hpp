#pragma once

#include <optional>
#include <vector>

#include "cancov/canonical_cover.hpp"
#include "cancov/findim_algebra.hpp"

namespace cancov {

/// A#Z_n = (A_{h-g})_{g,h}: basis elements are (g, h, a) with a a basis
/// element of A of degree h - g. The block algebra is trivially graded.
struct SmashAlgebra {
  struct Slot {
    std::int64_t g = 0;
    std::int64_t h = 0;
    std::size_t a = 0;
  };
  FinDimGradedAlgebra base;
  FinDimGradedAlgebra algebra;
  std::vector<Slot> slots;

  std::int64_t n() const { return base.modulus; }
  std::optional<std::size_t> index(std::int64_t g, std::int64_t h, std::size_t a) const;
  /// e_g: the unit of A in block (g, g).
  Vec idempotent(std::int64_t g) const;
  /// Entry (g, h) of x, as an element of A.
  Vec entry(const Vec& x, std::int64_t g, std::int64_t h) const;
};

SmashAlgebra smash_product(const FinDimGradedAlgebra& A);
/// a -> (a_{h-g})_{g,h}.
Vec diagonal_embed(const SmashAlgebra& S, const Vec& a);
/// (x_{g,h}) -> (1/n) sum_{g,h} x_{g,h}. Raises NoInverse when n = 0 in the field.
Vec average_split(const SmashAlgebra& S, const Vec& x);

/// Graded module on a basis adapted to the pieces: piece g spans
/// [offsets[g], offsets[g+1]) and A_i maps piece g into piece g + i.
struct GradedModule {
  std::int64_t modulus = 1;
  Module module;
  std::vector<std::size_t> offsets;
  std::size_t piece_dim(std::int64_t g) const { return offsets[g + 1] - offsets[g]; }
};
bool is_graded_module(const FinDimGradedAlgebra& A, const GradedModule& M);
/// Restriction along the diagonal embedding. The piece of degree g is
/// e_{-g} X, so that A_i X_g lies in X_{g+i}.
GradedModule push_down(const SmashAlgebra& S, const Module& X);

/// End^G of the right module sum_g A(-g), solved as a linear system, and the
/// blockwise left-multiplication map from the smash product into it.
struct GradedEndReport {
  std::size_t end_dim = 0;
  std::size_t smash_dim = 0;
  bool image_in_end = false;
  bool injective = false;
  bool multiplicative = false;
  bool agree() const { return end_dim == smash_dim && image_in_end && injective && multiplicative; }
};
GradedEndReport graded_end(const FinDimGradedAlgebra& A);

/// A * G^dual with f_k(g) = zeta^{kg}, multiplication
/// (a f_k)(b f_l) = zeta^{-k deg b} ab f_{k+l}, and the map
/// a f -> diag(a) (delta_{g,h} f(g)) into the smash product.
struct SkewComparison {
  FinDimGradedAlgebra skew;
  Matrix map;          // smash coordinates of the image of each skew basis element
  Matrix vandermonde;  // (zeta^{kg})_{k,g}
  Scalar vandermonde_det;
  bool multiplicative = false;
  bool bijective = false;
  bool isomorphism() const { return multiplicative && bijective && vandermonde_det != 0; }
};
/// Raises BadRoot when zeta is not a primitive n-th root of unity and
/// NoInverse when n is not invertible.
SkewComparison skew_group_ring(const FinDimGradedAlgebra& A, const Scalar& zeta);

/// Columns are matrix units E_ij (index i m + j) realizing A = M_m(k), when A
/// is split simple; nullopt otherwise.
std::optional<Matrix> matrix_algebra_iso(const FinDimGradedAlgebra& A);

/// Degreewise box check that Hom_R(S_g, S_h) realizes the smash block
/// S_{h-g}, shifted by m_q when h < g. Raises BoxTooSmall.
bool endR_S_iso_check(const GradedCover& cover, std::int64_t box, std::int64_t* radius = nullptr);

}  // namespace cancov
