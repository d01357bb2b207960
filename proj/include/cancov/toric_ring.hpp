#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cancov/abelian_group.hpp"
#include "cancov/integer.hpp"

namespace cancov {

/// Restricts Z^d to {m : sum_i w_i m_i = 0 mod modulus}.
struct Congruence {
  std::vector<std::int64_t> weights;
  std::int64_t modulus = 1;
};

/// Weil divisor on the toric ring: one integer coefficient per facet, in the
/// facet order of the owning monoid.
struct WeilDivisor {
  std::vector<std::int64_t> coeffs;

  std::size_t size() const { return coeffs.size(); }
  WeilDivisor operator+(const WeilDivisor& o) const;
  WeilDivisor operator-(const WeilDivisor& o) const;
  WeilDivisor operator-() const;
  WeilDivisor scaled(std::int64_t s) const;
  bool operator==(const WeilDivisor&) const = default;
  auto operator<=>(const WeilDivisor&) const = default;

  static WeilDivisor zero(std::size_t facets) { return {std::vector<std::int64_t>(facets, 0)}; }
  static WeilDivisor unit(std::size_t facets, std::size_t i);
};

/// The class group of the monoid ring together with the projection
/// div: Z^{facets} -> Cl.
struct ClassGroup {
  FgAbelianGroup group;

  GroupElement of(const WeilDivisor& D) const { return group.project(D.coeffs); }
  /// A divisor in the given class.
  WeilDivisor representative(const GroupElement& g) const;
};

/// Default enumeration budget for lattice boxes.
inline constexpr std::size_t kDefaultBoxBudget = 4'000'000;

/// Normal affine monoid C = {m in M : <m, v_F> >= 0 for all facets F} for a
/// pointed full-dimensional rational cone. All points and functionals are
/// stored in coordinates of a basis of the lattice M (the "internal" Z^d);
/// `lattice_basis` maps internal coordinates to the ambient coordinates the
/// monoid was specified in.
class AffineMonoid {
public:
  static AffineMonoid from_rays(const std::vector<Point>& rays, const std::optional<Congruence>& congruence = {});
  static AffineMonoid from_facets(const std::vector<Point>& normals, const std::optional<Congruence>& congruence = {});
  /// Internal-coordinate constructors (lattice is Z^d).
  static AffineMonoid from_internal_facets(std::size_t dim, const std::vector<Point>& normals);

  std::size_t rank() const { return dim_; }
  std::size_t num_facets() const { return normals_.size(); }
  const std::vector<Point>& facet_normals() const { return normals_; }
  const std::vector<Point>& rays() const { return rays_; }
  const IntMatrix& lattice_basis() const { return basis_; }
  const std::optional<Congruence>& congruence() const { return congruence_; }

  Point to_ambient(const Point& internal) const;
  /// Internal coordinates of an ambient point, nullopt if it is not in M.
  std::optional<Point> from_ambient(const Point& ambient) const;
  /// Facet normals expressed as (rational) functionals on ambient
  /// coordinates, scaled to primitive integer vectors.
  std::vector<Point> ambient_facet_normals() const;
  std::vector<Point> ambient_rays() const;

  std::vector<std::int64_t> pairings(const Point& m) const;
  /// Positive grading: sum of all facet pairings.
  std::int64_t degree(const Point& m) const;
  bool contains(const Point& m) const;
  bool in_divisorial(const WeilDivisor& D, const Point& m) const;
  /// The principal divisor div(x^m) = sum_F <m, v_F> D_F.
  WeilDivisor principal(const Point& m) const;

  const ClassGroup& class_group() const { return *class_group_; }
  /// Cached Hilbert basis (default budget).
  const std::vector<Point>& hilbert_basis() const;

  bool same_as(const AffineMonoid& other) const;

private:
  AffineMonoid() = default;
  void finish();

  std::size_t dim_ = 0;
  std::vector<Point> normals_;
  std::vector<Point> rays_;
  IntMatrix basis_;
  std::optional<Congruence> congruence_;
  std::shared_ptr<const ClassGroup> class_group_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

/// Lattice basis (columns) of {m in Z^d : w.m = 0 mod n}: the column Hermite
/// form followed by greedy pairwise size reduction.
IntMatrix congruence_lattice_basis(std::size_t dim, const Congruence& c);

/// Minimal generating set of the monoid, sorted by degree then
/// lexicographically. Raises BudgetExceeded when the enumeration box holds
/// more than `budget` lattice points.
std::vector<Point> hilbert_basis(const AffineMonoid& monoid, std::size_t budget = kDefaultBoxBudget);

/// True when every monoid point of degree <= max_degree is a sum of
/// elements of `basis`.
bool generates_up_to_degree(const AffineMonoid& monoid, const std::vector<Point>& basis, std::int64_t max_degree);

ClassGroup class_group(const AffineMonoid& monoid);
/// K = -sum_F D_F.
WeilDivisor canonical_divisor(const AffineMonoid& monoid);

/// B = 8 * (max |a_F| + 1).
std::int64_t default_box(const WeilDivisor& D);

/// Lattice points of p(D) = {m : <m, v_F> >= -a_F} with internal sup-norm <= box,
/// in lexicographic order.
std::vector<Point> divisorial_points(const AffineMonoid& monoid, const WeilDivisor& D, std::int64_t box);

/// All points of the box [-box, box]^d in lexicographic order, filtered.
template <class Pred>
std::vector<Point> box_points(std::size_t dim, std::int64_t box, Pred&& keep, std::size_t budget = kDefaultBoxBudget);

/// Minimal generators of p(D) as a module over the monoid, sorted by degree
/// then lexicographically.
std::vector<Point> module_generators(const AffineMonoid& monoid, const WeilDivisor& D,
                                     std::size_t budget = kDefaultBoxBudget);

/// Per-coordinate bounding box [lo_j, hi_j] guaranteed to contain all module
/// generators of p(D).
std::pair<Point, Point> generator_bounds(const AffineMonoid& monoid, const WeilDivisor& D);

/// Smallest sup-norm box radius containing every module generator of p(D).
std::int64_t generator_radius(const AffineMonoid& monoid, const WeilDivisor& D);

// ---------------------------------------------------------------------------

template <class Pred>
std::vector<Point> box_points(std::size_t dim, std::int64_t box, Pred&& keep, std::size_t budget) {
  std::vector<Point> out;
  if (box < 0) return out;
  double volume = 1;
  for (std::size_t i = 0; i < dim; ++i) volume *= static_cast<double>(2 * box + 1);
  require(volume <= static_cast<double>(budget), ErrorKind::BudgetExceeded,
          "lattice box of radius " + std::to_string(box) + " exceeds the enumeration budget");
  Point p(dim, -box);
  if (dim == 0) {
    if (keep(p)) out.push_back(p);
    return out;
  }
  for (;;) {
    if (keep(p)) out.push_back(p);
    std::size_t i = dim;
    while (i > 0 && p[i - 1] == box) {
      p[i - 1] = -box;
      --i;
    }
    if (i == 0) break;
    ++p[i - 1];
  }
  return out;
}

}  // namespace cancov
