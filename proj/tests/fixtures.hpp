// Monoids and algebras shared by the test suites.
#pragma once

#include "cancov/findim_algebra.hpp"
#include "cancov/toric_ring.hpp"

namespace fixtures {

using cancov::AffineMonoid;
using cancov::Congruence;

inline AffineMonoid octant() { return AffineMonoid::from_facets({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }

// Cone over the square; facet order puts D_1 first.
inline AffineMonoid quadric() {
  return AffineMonoid::from_facets({{1, 0, 0}, {0, 1, 0}, {-1, 0, 1}, {0, -1, 1}});
}

// Monomials of k[x,y,z] of degree divisible by n.
inline AffineMonoid veronese(std::int64_t n) {
  return AffineMonoid::from_facets({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, Congruence{{1, 1, 1}, n});
}

// {(a,b,c,d) >= 0 : 2a + b = c + d} in the basis (a,b,c), d = 2a + b - c.
inline AffineMonoid francia() {
  return AffineMonoid::from_facets({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 1, -1}});
}

inline AffineMonoid one_third() { return AffineMonoid::from_rays({{1, 0}, {1, 3}}); }

using cancov::Field;
using cancov::FinDimGradedAlgebra;

// F_2[x]/(1 + x^2), deg x = 1 in Z_2.
inline FinDimGradedAlgebra char2() { return cancov::polynomial_quotient(Field::prime(2), {1, 0, 1}, 2, 1); }
inline FinDimGradedAlgebra qx2() { return cancov::polynomial_quotient(Field::rationals(), {0, 0, 1}, 2, 1); }
inline FinDimGradedAlgebra qx3() { return cancov::polynomial_quotient(Field::rationals(), {0, 0, 0, 1}, 3, 1); }
inline FinDimGradedAlgebra f5x4() { return cancov::polynomial_quotient(Field::prime(5), {0, 0, 0, 0, 1}, 4, 1); }
inline FinDimGradedAlgebra mat2() { return cancov::matrix_algebra(Field::prime(2), 2); }
inline FinDimGradedAlgebra upper2() { return cancov::upper_triangular(Field::rationals(), 2); }

}  // namespace fixtures
