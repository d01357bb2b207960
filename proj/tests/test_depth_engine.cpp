#include <doctest.h>

#include <set>

#include "cancov/depth_engine.hpp"
#include "fixtures.hpp"

using namespace cancov;

namespace {

// Sign patterns met by lattice points of a box, found by scanning.
std::set<std::vector<bool>> scanned_patterns(const AffineMonoid& M, const WeilDivisor& D, std::int64_t box) {
  std::set<std::vector<bool>> seen;
  box_points(M.rank(), box, [&](const Point& a) {
    std::vector<bool> s;
    for (std::size_t F = 0; F < M.num_facets(); ++F) s.push_back(dot(a, M.facet_normals()[F]) >= -D.coeffs[F]);
    seen.insert(s);
    return false;
  });
  return seen;
}

std::set<std::vector<bool>> lattice_patterns(const std::vector<Chamber>& cs) {
  std::set<std::vector<bool>> out;
  for (const auto& c : cs)
    if (c.lattice_witness) out.insert(c.signs);
  return out;
}

}  // namespace

TEST_CASE("face lattices") {
  CHECK(face_lattice(fixtures::octant()).size() == 8);
  auto sq = face_lattice(fixtures::quadric());
  CHECK(sq.size() == 10);
  CHECK(sq.by_dim[0].size() == 1);
  CHECK(sq.by_dim[1].size() == 4);
  CHECK(sq.by_dim[2].size() == 4);
  CHECK(sq.by_dim[3].size() == 1);
  CHECK(sq.faces.front().facets.size() == 4);
  CHECK(sq.faces.back().facets.empty());
  CHECK(face_lattice(fixtures::one_third()).size() == 4);
}

TEST_CASE("chambers match a lattice scan") {
  auto line = AffineMonoid::from_facets({{1}});
  CHECK(chambers(line, WeilDivisor::zero(1)).size() == 2);

  auto q = fixtures::quadric();
  for (const auto& D : {WeilDivisor::zero(4), WeilDivisor::unit(4, 0).scaled(2), WeilDivisor{{1, -1, 2, 0}}}) {
    auto cs = chambers(q, D);
    for (const auto& c : cs)
      if (c.lattice_witness)
        for (std::size_t F = 0; F < 4; ++F)
          CHECK((dot(*c.lattice_witness, q.facet_normals()[F]) >= -D.coeffs[F]) == c.signs[F]);
    CHECK(lattice_patterns(cs) == scanned_patterns(q, D, 8));
  }
  // Shifting D_1 by 2 moves the first hyperplane only: a witness of one
  // chamber for D = 0 lands in the chamber with the same signs off facet 1.
  auto c0 = chambers(q, WeilDivisor::zero(4));
  auto D2 = WeilDivisor::unit(4, 0).scaled(2);
  for (const auto& c : c0) {
    if (!c.lattice_witness) continue;
    for (std::size_t F = 1; F < 4; ++F)
      CHECK((dot(*c.lattice_witness, q.facet_normals()[F]) >= -D2.coeffs[F]) == c.signs[F]);
  }
}

TEST_CASE("depth oracle values") {
  for (const auto& M : {fixtures::octant(), fixtures::quadric(), fixtures::veronese(6), fixtures::francia(),
                        fixtures::one_third()})
    CHECK(depth(M, WeilDivisor::zero(M.num_facets())).depth == M.rank());
  auto q = fixtures::quadric();
  auto D1 = WeilDivisor::unit(4, 0);
  CHECK(depth(q, D1).depth == 3);
  CHECK(depth(q, -D1).depth == 3);
  auto r2 = depth(q, D1.scaled(2));
  CHECK(r2.depth == 2);
  CHECK_FALSE(r2.cm);
  REQUIRE(r2.witness.has_value());
  CHECK(r2.witness_betti[2] != 0);
  CHECK(depth(q, D1.scaled(-2)).depth == 2);
  CHECK(depth(q, canonical_divisor(q)).cm);

  auto V = fixtures::veronese(6);
  for (int c = 0; c < 6; ++c) {
    auto D = V.class_group().representative(GroupElement{{Integer(c)}});
    CHECK(depth(V, D).depth == 3);
  }
}

TEST_CASE("depth is invariant under principal shifts") {
  auto q = fixtures::quadric();
  auto D = WeilDivisor::unit(4, 0).scaled(2);
  for (const Point& m : {Point{1, 0, 0}, Point{0, -1, 2}, Point{3, 1, -1}}) {
    auto r = depth(q, D + q.principal(m));
    CHECK(r.depth == 2);
    CHECK(r.torsion_free);
  }
}

TEST_CASE("gorenstein") {
  CHECK(gorenstein(fixtures::octant()).gorenstein);
  auto q = gorenstein(fixtures::quadric());
  CHECK(q.gorenstein);
  CHECK(q.witness == Point{1, 1, 2});
  CHECK_FALSE(gorenstein(fixtures::one_third()).gorenstein);
  CHECK_FALSE(gorenstein(fixtures::veronese(6)).gorenstein);
  CHECK(gorenstein(fixtures::veronese(3)).gorenstein);
}
