// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cancov/canonical_cover.hpp"
#include "cancov/depth_engine.hpp"
#include "cancov/divisor_theory.hpp"
#include "cancov/errors.hpp"
#include "cancov/findim_algebra.hpp"
#include "cancov/gabriel_cover.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cancov;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Checker {
public:
  void expect(bool cond, const std::string& what) {
    if (!cond && out_.ok) out_.detail = what;
    out_.ok = out_.ok && cond;
  }
  void note(const std::string& s) {
    if (out_.ok) out_.detail = s;
  }
  Outcome result() const { return out_; }

private:
  Outcome out_;
};

std::vector<AffineMonoid> q_gorenstein_fixtures() {
  return {fixtures::octant(), fixtures::quadric(), fixtures::veronese(6), fixtures::veronese(3), fixtures::one_third()};
}

Outcome char2_example() {
  Checker c;
  auto A = fixtures::char2();
  auto gl = gl_dim(A);
  c.expect(gl.is_infinite(), "gl.dim A = " + gl.str());
  if (gl.certificate) {
    const auto& p = *gl.certificate;
    c.expect(p.second.dim > 0, "certificate syzygy is zero");
    // Recheck the intertwiner on every basis element.
    bool intertwines = p.first.dim == p.second.dim;
    for (std::size_t k = 0; intertwines && k < A.dim(); ++k)
      intertwines = linalg::multiply(A.field, p.iso, p.first.action[k]) == linalg::multiply(A.field, p.second.action[k], p.iso);
    c.expect(intertwines, "periodicity certificate does not intertwine");
    c.expect(linalg::rank(A.field, p.iso) == p.iso.rows(), "periodicity certificate is singular");
  } else {
    c.expect(false, "no periodicity certificate");
  }
  auto S = smash_product(A);
  auto gs = gl_dim(S.algebra);
  c.expect(gs.is_finite() && gs.value == 0, "gl.dim A#Z_2 = " + gs.str());
  c.note("gl.dim A = " + gl.str() + ", gl.dim A#Z_2 = " + gs.str());
  return c.result();
}

Outcome transfer_suite() {
  Checker c;
  const std::vector<std::pair<std::int64_t, std::vector<Field>>> plan = {
      {2, {Field::rationals(), Field::prime(2), Field::prime(3)}},
      {3, {Field::prime(3), Field::prime(7)}},
      {4, {Field::prime(2), Field::prime(5)}}};
  std::mt19937_64 rng(2024);
  std::size_t cases = 0, equal_cases = 0, strict_cases = 0;
  for (const auto& [n, fields] : plan)
    for (const auto& F : fields)
      for (int t = 0; t < 10; ++t) {
        auto A = random_graded_algebra(F, rng, 8, n);
        c.expect(A.dim() <= 8 && validate(A).ok, "generator produced an invalid algebra");
        auto rep = verify_homological_transfer(A, 40);
        ++cases;
        std::string tag = F.name() + " n=" + std::to_string(n) + " dim " + std::to_string(A.dim());
        c.expect(rep.gl_le == true, "gl.dim inequality undecided or false: " + tag);
        c.expect(rep.inj_le == true, "inj.dim inequality undecided or false: " + tag);
        if (!rep.char_divides) {
          ++equal_cases;
          c.expect(rep.gl_eq == true && rep.inj_eq == true, "equality fails with char not dividing n: " + tag);
        }
        if (!rep.strict.empty()) {
          c.expect(rep.char_divides, "strict inequality with char not dividing n: " + tag);
          ++strict_cases;
        }
      }
  c.expect(cases >= 50, "fewer than 50 algebras");
  c.expect(strict_cases > 0, "no strict case when char divides n");
  c.note(std::to_string(cases) + " algebras, " + std::to_string(equal_cases) + " equality cases, " +
         std::to_string(strict_cases) + " strict");
  return c.result();
}

Outcome gabriel_suite() {
  Checker c;
  std::vector<FinDimGradedAlgebra> algebras = {fixtures::char2(), fixtures::qx2(),   fixtures::qx3(),
                                               fixtures::f5x4(),  fixtures::mat2(), fixtures::upper2()};
  std::mt19937_64 rng(5);
  for (int t = 0; t < 4; ++t) algebras.push_back(random_nakayama(Field::prime(7), rng, 8, 3));
  for (int t = 0; t < 4; ++t) algebras.push_back(random_graded_algebra(Field::prime(5), rng, 8, 4));
  std::size_t ends = 0, skews = 0;
  for (const auto& A : algebras) {
    c.expect(graded_end(A).agree(), "graded_end disagrees on an algebra of dim " + std::to_string(A.dim()));
    ++ends;
    // A primitive n-th root of unity in the base field, when n is invertible.
    if (!A.field.invertible(A.modulus)) continue;
    std::optional<Scalar> zeta;
    if (A.modulus == 1) zeta = Scalar(1);
    else if (A.modulus == 2) zeta = A.field.from_int(-1);
    else if (!A.field.is_rational())
      for (std::int64_t z = 2; z < A.field.characteristic() && !zeta; ++z) {
        std::int64_t k = 1;
        while (A.field.pow(A.field.from_int(z), static_cast<std::uint64_t>(k)) != 1) ++k;
        if (k == A.modulus) zeta = A.field.from_int(z);
      }
    if (!zeta) continue;
    c.expect(skew_group_ring(A, *zeta).isomorphism(), "skew group ring comparison fails");
    ++skews;
  }
  c.expect(skews >= 8, "too few skew group ring cases");
  c.note(std::to_string(ends) + " graded_end checks, " + std::to_string(skews) + " skew isomorphisms");
  return c.result();
}

Outcome veronese_example() {
  Checker c;
  auto V = fixtures::veronese(6);
  const auto& G = V.class_group().group;
  c.expect(G.describe() == "Z_6", "Cl = " + G.describe());
  auto k = V.class_group().of(canonical_divisor(V));
  auto ord = G.order(k);
  c.expect(ord && *ord == 2, "[K] does not have order 2");
  auto q = is_q_gorenstein(V);
  c.expect(q.flag && q.index == 2, "index is not 2");
  auto cover = build_cover(V);
  c.expect(cover.index() == 2, "cover index");
  auto cm = cover_as_monoid(cover);
  c.expect(find_monoid_isomorphism(cm.monoid, fixtures::veronese(3)).has_value(), "cover is not Veronese(3,3)");
  c.note("Cl = Z_6, [K] = " + G.format(k) + " of order 2, cover isomorphic to Veronese(3,3)");
  return c.result();
}

Outcome francia_example() {
  Checker c;
  auto F = fixtures::francia();
  c.expect(!is_q_gorenstein(F).flag, "francia reported Q-Gorenstein");
  c.expect(!gm_exists(F).exists, "francia reported a GM witness");
  auto s = search_stable_class_sets(F, 4, 6);
  c.expect(!s.stable.has_value(), "a nu-stable class set was found");
  c.expect(s.sets_checked > 0, "nothing searched");
  c.note(std::to_string(s.sets_checked) + " class sets checked, none nu-stable");
  return c.result();
}

Outcome determinant_suite() {
  Checker c;
  std::vector<AffineMonoid> monoids = {fixtures::quadric(), fixtures::veronese(6), fixtures::francia(),
                                       fixtures::one_third()};
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::int64_t> coef(-3, 3);
  std::size_t cases = 0;
  for (const auto& M : monoids) {
    const auto& Cl = M.class_group();
    auto random_class = [&] {
      ModuleClass X{M, {}};
      std::size_t r = 1 + rng() % 3;
      for (std::size_t i = 0; i < r; ++i) {
        WeilDivisor D = WeilDivisor::zero(M.num_facets());
        for (auto& a : D.coeffs) a = coef(rng);
        X.summands.push_back(D);
      }
      return X;
    };
    for (int t = 0; t < 60; ++t) {
      auto X = random_class(), Y = random_class();
      // Expansion over pairs of summands, straight from the divisors.
      WeilDivisor tensor = WeilDivisor::zero(M.num_facets()), hom = tensor;
      for (const auto& a : X.summands)
        for (const auto& b : Y.summands) {
          tensor = tensor + a + b;
          hom = hom + b - a;
        }
      auto td = tensor_det(X, Y);
      auto hd = hom_det(X, Y);
      c.expect(td.agree() && td.formula == Cl.of(tensor), "tensor determinant formula fails");
      c.expect(hd.agree() && hd.formula == Cl.of(hom), "hom determinant formula fails");
      c.expect(Cl.group.is_zero(hom_det(X, X).formula), "hom_det(M, M) is not zero");
      ++cases;
    }
  }
  c.expect(cases >= 200, "fewer than 200 cases");
  c.note(std::to_string(cases) + " random module classes");
  return c.result();
}

Outcome cover_suite() {
  Checker c;
  for (const auto& M : q_gorenstein_fixtures()) {
    auto cover = build_cover(M);
    auto coc = check_cocycle(cover);
    c.expect(coc.ok, "cocycle: " + coc.witness);
    std::int64_t box = 1;
    for (std::int64_t i = 0; i < cover.index(); ++i) box = std::max(box, generator_radius(M, cover.piece(i)));
    c.expect(check_strong_grading(cover, box), "strong grading fails");
    // S_0 = R on a box.
    auto p0 = divisorial_points(M, cover.piece(0), 4);
    auto R = box_points(M.rank(), 4, [&](const Point& m) { return M.contains(m); });
    c.expect(p0 == R, "S_0 differs from R");
    const auto& Cl = M.class_group();
    auto k = Cl.of(canonical_divisor(M));
    for (std::int64_t i = 0; i < cover.index(); ++i)
      c.expect(Cl.of(cover.piece(i)) == Cl.group.scale(i, k), "[S_i] != i[K]");
    auto cm = cover_as_monoid(cover);
    c.expect(check_cover_monoid(cover, cm, 3).ok(), "cover monoid presentation inconsistent");
  }
  c.note("octant, quadric, Veronese(6), Veronese(3), 1/3(1,1)");
  return c.result();
}

Outcome gorenstein_crosscheck() {
  Checker c;
  for (const auto& M : q_gorenstein_fixtures()) {
    auto cover = build_cover(M);
    auto r = is_gorenstein_cover(cover);
    bool all_cm = true;
    for (std::int64_t i = 0; i < cover.index(); ++i) all_cm = all_cm && is_cm(M, cover.piece(i));
    c.expect(r.agree() && r.all_pieces_cm == all_cm && r.combinatorial == all_cm, "Gorenstein verdicts disagree");
  }
  c.note("combinatorial and depth verdicts agree on 5 fixtures");
  return c.result();
}

Outcome depth_values() {
  Checker c;
  std::vector<AffineMonoid> all = q_gorenstein_fixtures();
  all.push_back(fixtures::francia());
  for (const auto& M : all)
    c.expect(depth(M, WeilDivisor::zero(M.num_facets())).depth == M.rank(), "depth of R is not d");
  auto q = fixtures::quadric();
  auto D1 = WeilDivisor::unit(4, 0);
  c.expect(depth(q, D1).depth == 3 && depth(q, -D1).depth == 3, "quadric depth p(+-D_1)");
  c.expect(depth(q, D1.scaled(2)).depth == 2 && depth(q, D1.scaled(-2)).depth == 2, "quadric depth p(+-2D_1)");
  auto V = fixtures::veronese(6);
  for (int cl = 0; cl < 6; ++cl)
    c.expect(depth(V, V.class_group().representative(GroupElement{{Integer(cl)}})).depth == 3,
             "Veronese class " + std::to_string(cl));
  c.note("depth(R) = d on 6 fixtures, quadric 3/3/2/2, Veronese classes all 3");
  return c.result();
}

Outcome lattice_duality() {
  Checker c;
  std::size_t pairs = 0;
  for (const auto& M : {fixtures::quadric(), fixtures::veronese(6), fixtures::veronese(3)}) {
    const auto& Cl = M.class_group();
    std::set<std::vector<std::int64_t>> seen;
    std::vector<WeilDivisor> reps;
    // Classes a * [D_1], a in [-2, 2].
    for (std::int64_t a = -2; a <= 2; ++a) {
      auto D = Cl.representative(Cl.of(WeilDivisor::unit(M.num_facets(), 0).scaled(a)));
      if (seen.insert(D.coeffs).second) reps.push_back(D);
    }
    for (const auto& X : reps)
      for (const auto& Y : reps) {
        auto r = ar_duality_check(M, X, Y, 8);
        c.expect(r.holds(), "duality check fails");
        ++pairs;
      }
  }
  c.note(std::to_string(pairs) + " pairs at box 8");
  return c.result();
}

Outcome snf_suite() {
  Checker c;
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    std::size_t r = 1 + rng() % 4, cols = 1 + rng() % 4;
    auto rows = oracle::random_matrix(rng, r, cols, 5);
    auto s = smith_normal_form(IntMatrix::from_rows(rows, cols));
    auto d = s.diagonal();
    d.resize(s.rank);
    c.expect(d == oracle::invariant_factors_by_minors(rows), "invariant factors differ from minors");
  }
  c.note("500 matrices");
  return c.result();
}

std::string run(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  status = pclose(p);
  return out;
}

Outcome determinism(const std::string& cli) {
  Checker c;
  int s1 = 0, s2 = 0, s3 = 0;
  auto a = run(cli + " paper-examples --json", s1);
  auto b = run(cli + " paper-examples --json", s2);
  auto t = run(cli + " paper-examples --json --threads 4", s3);
  c.expect(s1 == 0 && s2 == 0 && s3 == 0, "paper-examples exited with a nonzero status");
  c.expect(!a.empty() && a == b, "two runs differ");
  c.expect(a == t, "--threads 4 output differs");
  c.note(std::to_string(a.size()) + " bytes, identical across 3 runs");
  return c.result();
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "cancov";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"char-2 example: gl.dim A infinite with certificate, gl.dim A#Z_2 = 0", char2_example},
      {"randomized transfer of gl.dim and inj.dim to the smash product", transfer_suite},
      {"graded_end agreement and skew group ring isomorphism", gabriel_suite},
      {"Veronese(6,3): Cl = Z_6, [K] of order 2, index 2, cover = Veronese(3,3)", veronese_example},
      {"Francia flip: not Q-Gorenstein, no nu-stable class set", francia_example},
      {"determinant formulas for tensor and Hom", determinant_suite},
      {"canonical cover: cocycle, strong grading, S_0 = R, [S_i] = i[K]", cover_suite},
      {"Gorenstein cover verdict agrees with depth engine", gorenstein_crosscheck},
      {"depth oracle values", depth_values},
      {"Hom(Y, nu X) = Hom(X, Y)^dual on lattice points", lattice_duality},
      {"Smith normal form against gcd of minors", snf_suite},
      {"paper-examples --json is deterministic", [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << " (" << o.detail << ", "
              << ms << " ms)" << std::endl;
  }
  return failed ? 1 : 0;
}
