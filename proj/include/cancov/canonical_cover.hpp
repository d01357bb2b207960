#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cancov/field.hpp"
#include "cancov/toric_ring.hpp"

namespace cancov {

/// x in S_i: a lattice point m of p(iK), internal coordinates.
struct CoverElement {
  std::int64_t degree = 0;
  Point point;
  bool operator==(const CoverElement&) const = default;
};

/// Z_n-graded ring whose degree-i piece is spanned by the monomials of a
/// divisorial ideal (or is zero), with multiplication
/// x^m * x^m' = x^{m + m' + floor((i+j)/n) wrap}.
struct GradedMonomialRing {
  AffineMonoid base;
  std::int64_t modulus = 1;
  std::vector<std::optional<WeilDivisor>> pieces;
  Point wrap;

  bool contains(const CoverElement& x) const;
  CoverElement multiply(const CoverElement& x, const CoverElement& y) const;
};

/// S = sum_{0 <= i < n} p(iK) with the monomial trivialization q = x^{m_q}
/// of nK, <m_q, v_F> = -n on every facet.
class GradedCover {
public:
  const AffineMonoid& base() const { return base_; }
  const WeilDivisor& canonical() const { return K_; }
  std::int64_t index() const { return n_; }
  const Point& m_q() const { return m_q_; }

  WeilDivisor piece(std::int64_t i) const { return K_.scaled(i); }
  bool contains(const CoverElement& x) const;
  CoverElement unit() const { return {0, Point(base_.rank(), 0)}; }
  /// Degree (i + j) mod n, point m + m' + floor((i+j)/n) m_q.
  CoverElement multiply(const CoverElement& x, const CoverElement& y) const;
  GradedMonomialRing as_graded_ring() const;

  /// Copy with a different trivialization vector, for mutation tests.
  GradedCover with_m_q(const Point& m) const;

  friend GradedCover build_cover(const AffineMonoid& monoid);

private:
  AffineMonoid base_ = AffineMonoid::from_facets({{1}});
  WeilDivisor K_;
  std::int64_t n_ = 1;
  Point m_q_;
};

/// Raises NotQGorenstein when [K] has infinite order and
/// NoMonomialTrivialization when nK has no integral monomial generator.
GradedCover build_cover(const AffineMonoid& monoid);

struct CocycleReport {
  bool ok = true;
  std::string witness;  // first failure, empty when ok
  std::size_t triples_checked = 0;
};
/// Trivialization identity, the exponent cocycle identity for all degree
/// triples, unit, closure and associativity on sampled points of each piece.
CocycleReport check_cocycle(const GradedCover& cover, std::size_t samples_per_piece = 5);

/// (S_g S_h)** = S_{g+h} for all g, h: the reflexive hull of the product
/// ideal, read off facet minima of the generators, is the target piece.
/// Raises BoxTooSmall when generators of a piece leave the box.
bool check_strong_grading(const GradedMonomialRing& ring, std::int64_t box);
bool check_strong_grading(const GradedCover& cover, std::int64_t box);

/// S as a normal affine monoid on (M x Z) / <(m_q, -n)>, presented on Z^d.
struct CoverMonoid {
  AffineMonoid monoid;
  IntMatrix projection;  // (d+1) x (d+1) unimodular, row 0 spans <(m_q, -n)>
  IntMatrix inverse;

  Point embed(const GradedCover& cover, const CoverElement& x) const;
  CoverElement element(const GradedCover& cover, const Point& y) const;
};
CoverMonoid cover_as_monoid(const GradedCover& cover);

/// Box-level consistency of the presentation: embedding is a bijection onto
/// the cone points, multiplication matches, the degree-0 part is the base
/// monoid, and the cone points in the box are sums of Hilbert basis elements.
struct CoverMonoidCheck {
  bool bijective = true;
  bool multiplicative = true;
  bool degree_zero_is_base = true;
  bool normal = true;
  bool ok() const { return bijective && multiplicative && degree_zero_is_base && normal; }
};
CoverMonoidCheck check_cover_monoid(const GradedCover& cover, const CoverMonoid& cm, std::int64_t box);

/// Bounded search for a unimodular T with T(HB(A)) = HB(B), internal
/// coordinates. nullopt means "not found", not "not isomorphic".
std::optional<IntMatrix> find_monoid_isomorphism(const AffineMonoid& A, const AffineMonoid& B,
                                                 std::size_t budget = 2'000'000);

struct GorensteinCoverReport {
  bool combinatorial = false;  // canonical class of the cover monoid trivial
  bool all_pieces_cm = false;  // depth of every p(iK) is d
  std::optional<Point> witness;
  bool agree() const { return combinatorial == all_pieces_cm; }
};
GorensteinCoverReport is_gorenstein_cover(const GradedCover& cover);

/// The map (i, m) -> r^i (i, m) from the cover with scalar trivialization
/// c x^{m_q} to the one with (c / r^n) x^{m_q}, checked on all degree pairs.
struct QChangeReport {
  Scalar q;
  Scalar q_prime;
  bool multiplicative = false;
  bool automorphism = false;  // r^n = 1, so q' = q
};
QChangeReport q_change_iso(const GradedCover& cover, const Field& field, const Scalar& r,
                           const Scalar& c = Scalar(1));

/// Hom_R(S, S_i) = S: class multisets per degree and box-level Hom
/// realizations of Hom(S_g, S_i) against shifted pieces.
bool hom_S_Si_check(const GradedCover& cover, std::int64_t box);

}  // namespace cancov
