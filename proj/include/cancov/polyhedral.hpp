#pragma once

#include <optional>
#include <vector>

#include "cancov/integer.hpp"

namespace cancov {

/// a . x >= b over the rationals.
struct Inequality {
  std::vector<Rational> a;
  Rational b;
};

namespace polyhedral {

/// Generators of the pointed cone {x : <row, x> >= 0 for every row}, one
/// primitive integer vector per extreme ray, computed by the double
/// description method with an algebraic adjacency test.
/// Raises NotPointed when the rows do not span the dual space.
std::vector<Point> extreme_rays(const std::vector<Point>& rows, std::size_t dim);

/// Deterministic order used for facet and ray lists: fewer nonzero entries
/// first, then earlier first nonzero position, then lexicographically larger.
bool canonical_less(const Point& a, const Point& b);

/// Rank of a family of integer vectors.
std::size_t rank(const std::vector<Point>& vectors, std::size_t dim);

/// Exact rational feasibility by Fourier-Motzkin elimination; returns a
/// witness point or nullopt.
std::optional<std::vector<Rational>> feasible_point(const std::vector<Inequality>& system, std::size_t dim);

struct IntegerSearch {
  std::optional<Point> point;
  /// True when the search ran without hitting the box cap anywhere, so a
  /// missing point is a proof of integer infeasibility.
  bool exhaustive = false;
};

/// Integer point search by branch-and-bound over Fourier-Motzkin projections
/// inside the box [-radius, radius]^dim.
IntegerSearch integer_point_in_box(const std::vector<Inequality>& system, std::size_t dim, std::int64_t radius);

/// Integer feasibility with a doubling box schedule (1, 2, 4, ..., max_radius).
/// Raises BudgetExceeded when the question is still open at max_radius.
std::optional<Point> integer_point(const std::vector<Inequality>& system, std::size_t dim,
                                   std::int64_t max_radius = 1024);

/// Vertices of the pointed polyhedron {x : a.x >= b}.
std::vector<std::vector<Rational>> vertices(const std::vector<Inequality>& system, std::size_t dim);

}  // namespace polyhedral

}  // namespace cancov
