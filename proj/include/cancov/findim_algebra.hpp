#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cancov/field.hpp"

namespace cancov {

/// Z_n-graded algebra given by structure constants on a homogeneous basis.
class FinDimGradedAlgebra {
public:
  Field field;
  std::int64_t modulus = 1;
  std::vector<std::string> labels;
  std::vector<std::int64_t> degrees;  // residues mod modulus
  std::vector<Scalar> mult;           // e_i e_j = sum_k mult[(i d + j) d + k] e_k
  Vec unit;

  std::size_t dim() const { return labels.size(); }
  const Scalar& c(std::size_t i, std::size_t j, std::size_t k) const { return mult[(i * dim() + j) * dim() + k]; }
  Scalar& c(std::size_t i, std::size_t j, std::size_t k) { return mult[(i * dim() + j) * dim() + k]; }
  Vec basis(std::size_t i) const;
  Vec zero() const { return Vec(dim(), Scalar(0)); }
  Vec multiply(const Vec& x, const Vec& y) const;
  /// Matrix of y -> x y (columns indexed by the basis).
  Matrix left_mult(const Vec& x) const;
  /// Matrix of y -> y x.
  Matrix right_mult(const Vec& x) const;

  /// Empty algebra of dimension d with zero constants and unit e_0.
  static FinDimGradedAlgebra blank(const Field& F, std::size_t d, std::int64_t modulus = 1);
};

struct ValidationReport {
  bool ok = true;
  std::string kind;  // "associativity", "unit", "grading", "shape"
  std::vector<std::size_t> witness;
  std::string message;
};
/// Exhaustive check of associativity on basis triples, two-sided unit and
/// degree additivity. Violations are reported as data.
ValidationReport validate(const FinDimGradedAlgebra& A);

FinDimGradedAlgebra opposite(const FinDimGradedAlgebra& A);
/// Same algebra on the basis f_j = sum_i T(i, j) e_i. Degrees are taken from
/// the leading entry of each column, so T should respect the grading.
FinDimGradedAlgebra change_basis(const FinDimGradedAlgebra& A, const Matrix& T);

FinDimGradedAlgebra matrix_algebra(const Field& F, std::size_t m);
FinDimGradedAlgebra upper_triangular(const Field& F, std::size_t m);
/// k[x]/(f) for monic f (coefficients low to high, leading 1 included),
/// basis 1, x, ..., x^{deg f - 1}, deg x^k = k * deg_x mod n.
FinDimGradedAlgebra polynomial_quotient(const Field& F, const std::vector<std::int64_t>& f, std::int64_t modulus,
                                        std::int64_t deg_x);
/// Path algebra of the cyclic quiver 0 -> 1 -> ... -> m-1 -> 0 modulo paths
/// of length `lengths[i]` starting at vertex i (Kupisch series), with the
/// arrow leaving i in degree `arrow_degrees[i]`.
FinDimGradedAlgebra nakayama(const Field& F, const std::vector<std::size_t>& lengths,
                             const std::vector<std::int64_t>& arrow_degrees, std::int64_t modulus);
/// Random graded Nakayama algebra of dimension at most max_dim.
FinDimGradedAlgebra random_nakayama(const Field& F, std::mt19937_64& rng, std::size_t max_dim, std::int64_t modulus);
/// Either a random graded Nakayama algebra or k[x]/(x^e prod (x^n - mu^n)^{e_i})
/// with deg x = 1, which is homogeneous for the Z_n grading.
FinDimGradedAlgebra random_graded_algebra(const Field& F, std::mt19937_64& rng, std::size_t max_dim,
                                          std::int64_t modulus);

/// Jacobson radical as a basis of vectors in A.
std::vector<Vec> radical(const FinDimGradedAlgebra& A);
/// Minimal set of basis indices generating A together with the unit.
std::vector<std::size_t> algebra_generators(const FinDimGradedAlgebra& A);

/// Left module: action[i] is the matrix of the basis element e_i.
struct Module {
  std::vector<Matrix> action;
  std::size_t dim = 0;
};
Module regular_module(const FinDimGradedAlgebra& A);
/// D(A) = Hom_k(A, k) as a left module over opposite(A).
Module dual_regular(const FinDimGradedAlgebra& A);
/// Exhaustive check of the module axioms on basis pairs.
bool is_module(const FinDimGradedAlgebra& A, const Module& M);

/// Complete set of primitive orthogonal idempotents of A (lifted from A/J),
/// grouped by the isoclass of their simple tops. Raises NotSplit when A/J is
/// not a product of matrix algebras over the base field.
struct Decomposition {
  std::vector<Vec> radical;
  std::vector<Vec> idempotents;
  std::vector<std::size_t> simple_of;   // isoclass of the top of A e
  std::vector<std::size_t> class_rep;   // one idempotent index per isoclass
  std::vector<Module> simples;          // per isoclass
  std::vector<Module> projectives;      // A e per isoclass representative
  std::vector<std::vector<Vec>> projective_basis;
  std::vector<std::size_t> generators;
};
Decomposition decompose(const FinDimGradedAlgebra& A);

struct ProjectiveCover {
  Module cover;
  Matrix map;  // dim M x dim P
  std::vector<std::size_t> summands;  // isoclass of each indecomposable summand
};
ProjectiveCover projective_cover(const FinDimGradedAlgebra& A, const Decomposition& dec, const Module& M);
/// Kernel of the projective cover.
Module syzygy(const FinDimGradedAlgebra& A, const Decomposition& dec, const Module& M);

/// An invertible intertwiner X (X M_i = N_i X), searched in the Hom space.
/// nullopt means none was found; a returned matrix is a certificate.
std::optional<Matrix> module_isomorphism(const FinDimGradedAlgebra& A, const Decomposition& dec, const Module& M,
                                         const Module& N);

struct Periodicity {
  std::size_t i = 0;
  std::size_t j = 0;
  Module first;   // syzygy i
  Module second;  // syzygy j, nonzero
  Matrix iso;     // second = iso * first * iso^-1
};

struct HomDim {
  enum class Kind { Finite, Infinite, AtLeast };
  Kind kind = Kind::Finite;
  std::int64_t value = 0;  // the dimension, or the cutoff for AtLeast
  std::optional<Periodicity> certificate;

  static HomDim finite(std::int64_t v) { return {Kind::Finite, v, std::nullopt}; }
  bool is_finite() const { return kind == Kind::Finite; }
  bool is_infinite() const { return kind == Kind::Infinite; }
  std::string str() const;
};
/// a <= b when decidable from the verdicts.
std::optional<bool> known_le(const HomDim& a, const HomDim& b);
std::optional<bool> known_eq(const HomDim& a, const HomDim& b);

/// Projective dimension through the minimal resolution.
HomDim projective_dimension(const FinDimGradedAlgebra& A, const Decomposition& dec, const Module& M,
                            std::int64_t cutoff = 12);
/// Maximum over the simple modules; simples are resolved in parallel.
HomDim gl_dim(const FinDimGradedAlgebra& A, std::int64_t cutoff = 12);
/// inj.dim of A as a left module, as pd of D(A) over the opposite algebra.
HomDim inj_dim_self(const FinDimGradedAlgebra& A, std::int64_t cutoff = 12);

struct TransferReport {
  HomDim gl_A, gl_smash, inj_A, inj_smash;
  bool char_divides = false;
  std::optional<bool> gl_le, inj_le;
  std::optional<bool> gl_eq, inj_eq;
  std::vector<std::string> strict;  // strict inequalities observed
  /// Inequalities hold, and equalities hold when char does not divide n.
  bool holds() const;
};
TransferReport verify_homological_transfer(const FinDimGradedAlgebra& A, std::int64_t cutoff = 12);

}  // namespace cancov
