#include <doctest.h>

#include <set>

#include "cancov/toric_ring.hpp"
#include "fixtures.hpp"

using namespace cancov;

TEST_CASE("dual descriptions") {
  auto oct = AffineMonoid::from_rays({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(oct.facet_normals() == std::vector<Point>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});

  auto sq = AffineMonoid::from_rays({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  CHECK(sq.facet_normals() == std::vector<Point>{{1, 0, 0}, {0, 1, 0}, {-1, 0, 1}, {0, -1, 1}});

  auto two = AffineMonoid::from_rays({{1, 0}, {1, 2}});
  CHECK(two.facet_normals() == std::vector<Point>{{0, 1}, {2, -1}});
}

TEST_CASE("dual description errors") {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  CHECK(kind([] { AffineMonoid::from_rays({{1, 0}, {-1, 0}, {0, 1}}); }) == ErrorKind::NotPointed);
  CHECK(kind([] { AffineMonoid::from_rays({{1, 0, 0}, {0, 1, 0}}); }) == ErrorKind::NotFullDimensional);
  CHECK(kind([] { AffineMonoid::from_facets({{1, 0}, {-1, 0}, {0, 1}}); }) == ErrorKind::NotFullDimensional);
  CHECK(kind([] { AffineMonoid::from_facets({{1, 0}, {0, 1}, {1, 1}}); }) != ErrorKind::NotPointed);
  CHECK(kind([] { AffineMonoid::from_facets({{1, 0, 0}, {0, 1, 0}}); }) == ErrorKind::NotPointed);
}

TEST_CASE("duality roundtrip") {
  auto sq = fixtures::quadric();
  auto back = AffineMonoid::from_rays(sq.rays());
  std::set<Point> a(sq.facet_normals().begin(), sq.facet_normals().end());
  std::set<Point> b(back.facet_normals().begin(), back.facet_normals().end());
  CHECK(a == b);
  std::set<Point> r1(sq.rays().begin(), sq.rays().end()), r2(back.rays().begin(), back.rays().end());
  CHECK(r1 == r2);
}

TEST_CASE("redundant facets are dropped and order kept") {
  auto M = AffineMonoid::from_facets({{0, 1}, {1, 1}, {1, 0}});
  CHECK(M.facet_normals() == std::vector<Point>{{0, 1}, {1, 0}});
}

TEST_CASE("hilbert bases") {
  CHECK(fixtures::octant().hilbert_basis() == std::vector<Point>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  auto sq = fixtures::quadric();
  std::set<Point> hb(sq.hilbert_basis().begin(), sq.hilbert_basis().end());
  CHECK(hb == std::set<Point>{{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  auto two = AffineMonoid::from_rays({{1, 0}, {1, 2}});
  std::set<Point> h2(two.hilbert_basis().begin(), two.hilbert_basis().end());
  CHECK(h2 == std::set<Point>{{1, 0}, {1, 1}, {1, 2}});
  for (const auto& M : {fixtures::quadric(), fixtures::veronese(6), fixtures::francia(), fixtures::one_third()})
    CHECK(generates_up_to_degree(M, M.hilbert_basis(), 12));
}

TEST_CASE("veronese hilbert basis is all degree-6 monomials") {
  auto V = fixtures::veronese(3);
  std::set<Point> amb;
  for (const auto& h : V.hilbert_basis()) amb.insert(V.to_ambient(h));
  std::set<Point> expect;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) expect.insert({a, b, 3 - a - b});
  CHECK(amb == expect);
}

TEST_CASE("class groups") {
  CHECK(fixtures::octant().class_group().group.is_trivial());
  CHECK(fixtures::quadric().class_group().group.describe() == "Z");
  CHECK(fixtures::veronese(6).class_group().group.describe() == "Z_6");
  CHECK(fixtures::veronese(3).class_group().group.describe() == "Z_3");
  CHECK(fixtures::one_third().class_group().group.describe() == "Z_3");
  CHECK(fixtures::francia().class_group().group.describe() == "Z");
}

TEST_CASE("canonical classes") {
  auto q = fixtures::quadric();
  auto K = canonical_divisor(q);
  CHECK(K.coeffs == std::vector<std::int64_t>{-1, -1, -1, -1});
  CHECK(q.class_group().group.is_zero(q.class_group().of(K)));
  CHECK(q.principal({-1, -1, -2}) == K);

  auto f = fixtures::francia();
  CHECK(f.class_group().group.format(f.class_group().of(canonical_divisor(f))) == "-1");

  auto oct = fixtures::octant();
  auto gens = module_generators(oct, canonical_divisor(oct));
  CHECK(gens == std::vector<Point>{{1, 1, 1}});
}

TEST_CASE("principal divisors vanish in the class group") {
  for (const auto& M : {fixtures::quadric(), fixtures::veronese(6), fixtures::francia(), fixtures::one_third()}) {
    const auto& Cl = M.class_group();
    for (std::int64_t a = -2; a <= 2; ++a)
      for (std::int64_t b = -2; b <= 2; ++b) {
        Point m(M.rank(), 0);
        m[0] = a;
        m[1] = b;
        CHECK(Cl.group.is_zero(Cl.of(M.principal(m))));
      }
    for (std::size_t i = 0; i < M.num_facets(); ++i) {
      auto g = Cl.of(WeilDivisor::unit(M.num_facets(), i));
      CHECK(Cl.of(Cl.representative(g)) == g);
    }
  }
}

TEST_CASE("divisorial points") {
  auto q = fixtures::quadric();
  auto D1 = WeilDivisor::unit(4, 0);
  auto pts = divisorial_points(q, D1, 2);
  CHECK(std::find(pts.begin(), pts.end(), Point{-1, 0, 0}) != pts.end());
  CHECK(std::find(pts.begin(), pts.end(), Point{-2, 0, 0}) == pts.end());
  auto zero = divisorial_points(q, WeilDivisor::zero(4), 2);
  for (const auto& p : zero) CHECK(q.contains(p));

  auto V = fixtures::veronese(6);
  auto K = canonical_divisor(V);
  auto u = V.from_ambient({1, 1, 4});
  REQUIRE(u.has_value());
  CHECK(V.in_divisorial(K, *u));
  CHECK_FALSE(V.from_ambient({1, 1, 3}).has_value());
}

TEST_CASE("reflexive products contain sums") {
  auto q = fixtures::quadric();
  WeilDivisor D{{1, 0, -1, 0}}, E{{0, 2, 0, -1}};
  auto P = divisorial_points(q, D, 3), Q = divisorial_points(q, E, 3);
  for (const auto& a : P)
    for (const auto& b : Q) CHECK(q.in_divisorial(D + E, add(a, b)));
}

TEST_CASE("module generators") {
  auto q = fixtures::quadric();
  CHECK(module_generators(q, WeilDivisor::zero(4)) == std::vector<Point>{{0, 0, 0}});
  std::set<Point> g1;
  for (const auto& p : module_generators(q, WeilDivisor::unit(4, 0))) g1.insert(p);
  CHECK(g1 == std::set<Point>{{-1, 0, 0}, {0, 0, 0}});
  std::set<Point> g2;
  for (const auto& p : module_generators(q, WeilDivisor::unit(4, 0).scaled(2))) g2.insert(p);
  CHECK(g2 == std::set<Point>{{-2, 0, 0}, {-1, 0, 0}, {0, 0, 0}});
}

TEST_CASE("linearly equivalent divisors give translated point sets") {
  auto q = fixtures::quadric();
  WeilDivisor D{{1, 0, 0, 0}};
  Point m{1, -1, 2};
  WeilDivisor E = D + q.principal(m);
  CHECK(q.class_group().of(D) == q.class_group().of(E));
  // p(E) = p(D) - m
  for (const auto& x : divisorial_points(q, D, 3)) CHECK(q.in_divisorial(E, sub(x, m)));
  WeilDivisor F = D + WeilDivisor::unit(4, 1);
  CHECK(q.class_group().of(D) != q.class_group().of(F));
}
