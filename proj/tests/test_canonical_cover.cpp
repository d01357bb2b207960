#include <doctest.h>

#include "cancov/canonical_cover.hpp"
#include "cancov/depth_engine.hpp"
#include "fixtures.hpp"

using namespace cancov;

namespace {

CoverElement amb(const GradedCover& c, std::int64_t i, const Point& m) {
  auto u = c.base().from_ambient(m);
  REQUIRE(u.has_value());
  return {i, *u};
}

}  // namespace

TEST_CASE("trivializations") {
  auto q = build_cover(fixtures::quadric());
  CHECK(q.index() == 1);
  CHECK(q.m_q() == Point{-1, -1, -2});
  auto v = build_cover(fixtures::veronese(6));
  CHECK(v.index() == 2);
  CHECK(v.base().to_ambient(v.m_q()) == Point{-2, -2, -2});
  auto t = build_cover(fixtures::one_third());
  CHECK(t.index() == 3);
  try {
    build_cover(fixtures::francia());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotQGorenstein);
  }
}

TEST_CASE("multiplication") {
  auto v = build_cover(fixtures::veronese(6));
  auto x = amb(v, 1, {1, 1, 4}), y = amb(v, 1, {4, 1, 1});
  REQUIRE(v.contains(x));
  REQUIRE(v.contains(y));
  auto xy = v.multiply(x, y);
  CHECK(xy.degree == 0);
  CHECK(v.base().to_ambient(xy.point) == Point{3, 0, 3});
  auto r0 = amb(v, 0, {1, 2, 3});
  auto p = v.multiply(r0, amb(v, 0, {0, 0, 6}));
  CHECK(p == amb(v, 0, {1, 2, 9}));
  CHECK(v.multiply(r0, x) == amb(v, 1, {2, 3, 7}));
  CHECK(v.multiply(v.unit(), x) == x);
}

TEST_CASE("cocycle checks") {
  for (const auto& M : {fixtures::quadric(), fixtures::veronese(6), fixtures::one_third(), fixtures::veronese(3)}) {
    auto c = build_cover(M);
    auto r = check_cocycle(c);
    CHECK(r.ok);
    CHECK(r.triples_checked == static_cast<std::size_t>(c.index() * c.index() * c.index()));
  }
  auto v = build_cover(fixtures::veronese(6));
  Point bad = v.m_q();
  bad[0] += 1;
  auto r = check_cocycle(v.with_m_q(bad));
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.witness.empty());
}

TEST_CASE("strong grading") {
  CHECK(check_strong_grading(build_cover(fixtures::quadric()), 4));
  CHECK(check_strong_grading(build_cover(fixtures::veronese(6)), 6));
  CHECK(check_strong_grading(build_cover(fixtures::one_third()), 6));

  // k[x] graded by Z_2 with x in degree 0: S_1 = 0.
  GradedMonomialRing kx{AffineMonoid::from_facets({{1}}), 2, {WeilDivisor::zero(1), std::nullopt}, Point{0}};
  CHECK_FALSE(check_strong_grading(kx, 4));

  // S_1 = p(D1) on the octant with no wrap: S_1 S_1 only reaches p(2 D1).
  WeilDivisor d1 = WeilDivisor::zero(3);
  d1.coeffs[0] = 1;
  GradedMonomialRing loose{fixtures::octant(), 2, {WeilDivisor::zero(3), d1}, Point{0, 0, 0}};
  CHECK_FALSE(check_strong_grading(loose, 4));
}

TEST_CASE("cover monoids") {
  auto q = build_cover(fixtures::quadric());
  auto cq = cover_as_monoid(q);
  CHECK(find_monoid_isomorphism(cq.monoid, fixtures::quadric()).has_value());
  CHECK(check_cover_monoid(q, cq, 3).ok());

  auto v = build_cover(fixtures::veronese(6));
  auto cv = cover_as_monoid(v);
  CHECK(cv.monoid.class_group().group.describe() == "Z_3");
  CHECK(find_monoid_isomorphism(cv.monoid, fixtures::veronese(3)).has_value());
  CHECK_FALSE(find_monoid_isomorphism(cv.monoid, fixtures::veronese(6)).has_value());
  CHECK(check_cover_monoid(v, cv, 3).ok());

  auto t = build_cover(fixtures::one_third());
  auto ct = cover_as_monoid(t);
  auto plane = AffineMonoid::from_facets({{1, 0}, {0, 1}});
  CHECK(find_monoid_isomorphism(ct.monoid, plane).has_value());
  CHECK(check_cover_monoid(t, ct, 4).ok());
}

TEST_CASE("pieces have the expected classes") {
  auto v = build_cover(fixtures::veronese(6));
  const auto& Cl = v.base().class_group();
  auto k = Cl.of(v.canonical());
  for (std::int64_t i = 0; i < v.index(); ++i) CHECK(Cl.of(v.piece(i)) == Cl.group.scale(i, k));
}

TEST_CASE("gorenstein covers") {
  for (const auto& M : {fixtures::quadric(), fixtures::veronese(6), fixtures::one_third(), fixtures::veronese(3)}) {
    auto r = is_gorenstein_cover(build_cover(M));
    CHECK(r.combinatorial);
    CHECK(r.all_pieces_cm);
    CHECK(r.agree());
  }
  auto q = is_gorenstein_cover(build_cover(fixtures::quadric()));
  CHECK(q.witness.has_value());
}

TEST_CASE("change of trivialization") {
  auto v = build_cover(fixtures::veronese(6));
  const Field Q = Field::rationals();
  auto id = q_change_iso(v, Q, 1);
  CHECK(id.multiplicative);
  CHECK(id.automorphism);
  auto two = q_change_iso(v, Q, 2);
  CHECK(two.multiplicative);
  CHECK(two.q_prime == Scalar(1, 4));
  CHECK_FALSE(two.automorphism);
  auto minus = q_change_iso(v, Q, -1);
  CHECK(minus.automorphism);
  CHECK(minus.multiplicative);
  auto t = build_cover(fixtures::one_third());
  auto f7 = q_change_iso(t, Field::prime(7), 2);  // 2^3 = 1 mod 7
  CHECK(f7.automorphism);
  CHECK(f7.multiplicative);
}

TEST_CASE("hom from the cover") {
  CHECK(hom_S_Si_check(build_cover(fixtures::quadric()), 4));
  CHECK(hom_S_Si_check(build_cover(fixtures::veronese(6)), 6));
  CHECK(hom_S_Si_check(build_cover(fixtures::one_third()), 6));
}
