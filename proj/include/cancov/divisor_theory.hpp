#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "cancov/toric_ring.hpp"

namespace cancov {

/// A direct sum of divisorial ideals p(D_1) + ... + p(D_r) over one monoid.
struct ModuleClass {
  AffineMonoid monoid;
  std::vector<WeilDivisor> summands;

  std::size_t rank() const { return summands.size(); }
  static ModuleClass free(const AffineMonoid& monoid, std::size_t rank);
};

/// Summands with a Z_n grading tag, as produced by lift_to_cover.
struct GradedModuleClass {
  AffineMonoid monoid;
  std::int64_t modulus = 1;
  std::vector<std::pair<std::int64_t, WeilDivisor>> summands;
};

/// Classes of the summands, as a set (add-equivalence forgets multiplicity).
std::set<GroupElement> class_set(const ModuleClass& M);
std::vector<GroupElement> class_multiset(const ModuleClass& M);
bool add_equivalent(const ModuleClass& M, const ModuleClass& N);

GroupElement det_class(const ModuleClass& M);

/// Right-hand side of a determinant formula next to the value obtained by
/// expanding over pairs of rank-one summands.
struct DetComparison {
  GroupElement formula;
  GroupElement expansion;
  bool agree() const { return formula == expansion; }
};

/// [det (M (x) N)**] = rk M [det N] + rk N [det M].
DetComparison tensor_det(const ModuleClass& M, const ModuleClass& N);
/// [det Hom(M, N)] = rk M [det N] - rk N [det M].
DetComparison hom_det(const ModuleClass& M, const ModuleClass& N);

/// nu(M) = (omega (x) M)**: every summand shifted by K.
ModuleClass nakayama(const ModuleClass& M);

struct QGorenstein {
  bool flag = false;
  std::optional<std::int64_t> index;
};
QGorenstein is_q_gorenstein(const AffineMonoid& monoid);

/// add M = add nu(M), decided on class sets.
bool gm_criterion(const ModuleClass& M);

struct GmWitness {
  bool exists = false;
  std::optional<ModuleClass> witness;  // {iK : 0 <= i < n}
};
GmWitness gm_exists(const AffineMonoid& monoid);

struct ArDualityReport {
  WeilDivisor lhs;  // Hom(Y, nu X)
  WeilDivisor rhs;  // Hom(X, Y)^dual
  bool identity = false;
  bool lattice = false;
  std::int64_t checked_radius = 0;
  bool holds() const { return identity && lattice; }
};
/// Hom(Y, nu X) = Hom(X, Y)^dual, as a divisor identity and on lattice
/// points: the realization {m : m + (p(X) in box) in p(Y)} is compared with
/// p(Y - X) on the box shrunk by the generator radius of p(X). Raises
/// BoxTooSmall when a generator of p(X) lies outside the box.
ArDualityReport ar_duality_check(const AffineMonoid& monoid, const WeilDivisor& X, const WeilDivisor& Y,
                                 std::int64_t box);

/// Lattice points m with |m| <= radius and m + x in p(Y) for all listed x.
std::vector<Point> hom_realization(const AffineMonoid& monoid, const std::vector<Point>& source_points,
                                   const WeilDivisor& Y, std::int64_t radius);

/// Box realization of Hom(p(A), p(B)) equals p(B - A) on the box shrunk by
/// the generator radius of p(A) (written to *radius). Raises BoxTooSmall.
bool hom_matches(const AffineMonoid& monoid, const WeilDivisor& A, const WeilDivisor& B, std::int64_t box,
                 std::int64_t* radius = nullptr);

struct SelfDualTorsion {
  bool holds = false;
  std::optional<std::int64_t> torsion_bound;  // (rk M)^2 kills [K]
};
SelfDualTorsion end_selfdual_torsion(const ModuleClass& M);

/// sum_{j<n} nu^j(M) with tag j on each block. Raises NotQGorenstein.
GradedModuleClass lift_to_cover(const ModuleClass& M);
ModuleClass restrict_from_cover(const GradedModuleClass& G);

/// Exhaustive search for nu-stable class sets.
struct StableSetSearch {
  std::size_t sets_checked = 0;
  std::optional<std::vector<GroupElement>> stable;  // first stable set found
};
/// Every nonempty set of at most `max_size` classes whose free coordinates
/// lie in [-window, window] (torsion coordinates range fully).
StableSetSearch search_stable_class_sets(const AffineMonoid& monoid, std::size_t max_size, std::int64_t window);

}  // namespace cancov
