#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cancov/toric_ring.hpp"

namespace cancov {

struct Face {
  std::vector<std::size_t> facets;  // facets containing the face
  std::vector<std::size_t> rays;    // extreme rays lying in the face
  std::size_t dim = 0;
};

/// All faces of the cone, ordered by dimension and then by ray set. Index 0
/// is the apex, the last face is the whole cone.
struct FaceLattice {
  std::vector<Face> faces;
  std::vector<std::vector<std::size_t>> by_dim;  // face indices per dimension
  // cofaces[s] lists (t, [t : s]) for faces t having s as a facet
  std::vector<std::vector<std::pair<std::size_t, int>>> cofaces;

  std::size_t size() const { return faces.size(); }
};

FaceLattice face_lattice(const AffineMonoid& monoid);

/// Incidence number [tau : sigma] for sigma a facet of tau, from the
/// orientations given by the first independent rays of each face.
int incidence(const AffineMonoid& monoid, const Face& sigma, const Face& tau);

/// Region of degree space where the facet inequalities of p(D) hold or fail
/// in a fixed pattern: signs[F] true means <a, v_F> >= -a_F, false means
/// <a, v_F> <= -a_F - 1.
struct Chamber {
  std::vector<bool> signs;
  std::vector<Rational> rational_witness;
  std::optional<Point> lattice_witness;
};

/// Every sign pattern with a rational point, in lexicographic order of the
/// patterns (true before false). Raises BudgetExceeded when integer
/// feasibility cannot be settled.
std::vector<Chamber> chambers(const AffineMonoid& monoid, const WeilDivisor& D);

/// Ranks of the degree-a piece of H^i_m(p(D)), i = 0..d, for a degree in the
/// given chamber.
struct ChamberCohomology {
  std::vector<std::size_t> betti;
  bool torsion_free = true;  // integral Smith forms of the coboundaries
};
ChamberCohomology chamber_cohomology(const AffineMonoid& monoid, const FaceLattice& faces,
                                     const std::vector<bool>& signs);

struct DepthReport {
  WeilDivisor divisor;
  std::size_t depth = 0;
  bool cm = false;
  std::size_t chambers_total = 0;   // sign patterns with rational points
  std::size_t chambers_lattice = 0; // with lattice points
  std::optional<Chamber> witness;   // a chamber realizing H^depth != 0
  std::vector<std::size_t> witness_betti;
  bool torsion_free = true;
};

/// depth of p(D) via the Ishida complex, chamber by chamber. Chambers are
/// processed with the library thread count; the result does not depend on it.
DepthReport depth(const AffineMonoid& monoid, const WeilDivisor& D);
bool is_cm(const AffineMonoid& monoid, const WeilDivisor& D);

/// [K] = 0 and some lattice point pairs to 1 with every facet normal.
struct GorensteinReport {
  bool gorenstein = false;
  std::optional<Point> witness;  // m with <m, v_F> = 1 for all F
};
GorensteinReport gorenstein(const AffineMonoid& monoid);

}  // namespace cancov
