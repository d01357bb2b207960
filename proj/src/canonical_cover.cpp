#include "cancov/canonical_cover.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "cancov/depth_engine.hpp"
#include "cancov/divisor_theory.hpp"

namespace cancov {

namespace {

std::int64_t wraps(std::int64_t i, std::int64_t j, std::int64_t n) { return floor_div(i + j, n); }

std::string show(const AffineMonoid& M, const CoverElement& x) {
  return "(" + std::to_string(x.degree) + "," + to_string(M.to_ambient(x.point)) + ")";
}

Vec to_vec(const Point& p) {
  Vec v;
  for (auto x : p) v.emplace_back(static_cast<long>(x));
  return v;
}

// A few points of p(D): its module generators, then generators plus
// Hilbert basis elements.
std::vector<Point> sample_points(const AffineMonoid& M, const WeilDivisor& D, std::size_t count) {
  std::vector<Point> gens = module_generators(M, D);
  std::vector<Point> out;
  for (const auto& g : gens) {
    if (out.size() == count) return out;
    out.push_back(g);
  }
  for (const auto& h : M.hilbert_basis())
    for (const auto& g : gens) {
      if (out.size() == count) return out;
      out.push_back(add(g, h));
    }
  return out;
}

}  // namespace

bool GradedMonomialRing::contains(const CoverElement& x) const {
  if (x.degree < 0 || x.degree >= modulus) return false;
  const auto& p = pieces[static_cast<std::size_t>(x.degree)];
  return p && base.in_divisorial(*p, x.point);
}

CoverElement GradedMonomialRing::multiply(const CoverElement& x, const CoverElement& y) const {
  const std::int64_t e = wraps(x.degree, y.degree, modulus);
  return {mod_floor(x.degree + y.degree, modulus), add(add(x.point, y.point), scale(e, wrap))};
}

bool GradedCover::contains(const CoverElement& x) const {
  return x.degree >= 0 && x.degree < n_ && base_.in_divisorial(piece(x.degree), x.point);
}

CoverElement GradedCover::multiply(const CoverElement& x, const CoverElement& y) const {
  const std::int64_t e = wraps(x.degree, y.degree, n_);
  return {mod_floor(x.degree + y.degree, n_), add(add(x.point, y.point), scale(e, m_q_))};
}

GradedMonomialRing GradedCover::as_graded_ring() const {
  GradedMonomialRing R{base_, n_, {}, m_q_};
  for (std::int64_t i = 0; i < n_; ++i) R.pieces.emplace_back(piece(i));
  return R;
}

GradedCover GradedCover::with_m_q(const Point& m) const {
  GradedCover c = *this;
  c.m_q_ = m;
  return c;
}

GradedCover build_cover(const AffineMonoid& monoid) {
  QGorenstein q = is_q_gorenstein(monoid);
  require(q.flag, ErrorKind::NotQGorenstein, "the canonical class has infinite order");
  GradedCover c;
  c.base_ = monoid;
  c.K_ = canonical_divisor(monoid);
  c.n_ = *q.index;

  std::vector<Vec> rows;
  for (const auto& v : monoid.facet_normals()) rows.push_back(to_vec(v));
  const Field Q = Field::rationals();
  auto sol = linalg::solve(Q, Matrix::from_rows(rows, monoid.rank()),
                           Vec(monoid.num_facets(), Scalar(static_cast<long>(-c.n_))));
  require(sol.has_value(), ErrorKind::NoMonomialTrivialization, "nK is not principal");
  for (const auto& x : *sol) {
    require(x.get_den() == 1, ErrorKind::NoMonomialTrivialization, "nK has no integral monomial generator");
    c.m_q_.push_back(to_int64(x));
  }
  // The facet pairing has full column rank, so the solution is unique and
  // trivially the lexicographically smallest one.
  require(monoid.principal(c.m_q_) == c.K_.scaled(c.n_), ErrorKind::Inconsistent, "trivialization check failed");
  return c;
}

CocycleReport check_cocycle(const GradedCover& cover, std::size_t samples_per_piece) {
  CocycleReport rep;
  const std::int64_t n = cover.index();
  const AffineMonoid& M = cover.base();
  auto failure = [&](const std::string& why) {
    rep.ok = false;
    rep.witness = why;
    return rep;
  };

  for (auto p : M.pairings(cover.m_q()))
    if (p != -n) return failure("m_q pairs to " + std::to_string(p) + " with a facet, expected " + std::to_string(-n));

  // q(i,j) q(i+j,k) = q(i,j+k) q(j,k), exponents of q.
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      for (std::int64_t k = 0; k < n; ++k) {
        ++rep.triples_checked;
        const std::int64_t lhs = wraps(i, j, n) + wraps(mod_floor(i + j, n), k, n);
        const std::int64_t rhs = wraps(i, mod_floor(j + k, n), n) + wraps(j, k, n);
        if (lhs != rhs)
          return failure("cocycle identity fails at degrees " + std::to_string(i) + "," + std::to_string(j) + "," +
                         std::to_string(k));
      }

  std::vector<std::vector<CoverElement>> samples(n);
  for (std::int64_t i = 0; i < n; ++i)
    for (auto& p : sample_points(M, cover.piece(i), samples_per_piece)) samples[i].push_back({i, p});

  const CoverElement one = cover.unit();
  for (const auto& piece : samples)
    for (const auto& x : piece)
      if (!(cover.multiply(one, x) == x) || !(cover.multiply(x, one) == x))
        return failure("unit fails on " + show(M, x));

  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      for (const auto& x : samples[i])
        for (const auto& y : samples[j]) {
          CoverElement xy = cover.multiply(x, y);
          if (!cover.contains(xy)) return failure("product leaves the cover: " + show(M, x) + " * " + show(M, y));
          if (!(xy == cover.multiply(y, x))) return failure("not commutative: " + show(M, x) + " * " + show(M, y));
          for (std::int64_t k = 0; k < n; ++k)
            for (const auto& z : samples[k]) {
              if (!(cover.multiply(xy, z) == cover.multiply(x, cover.multiply(y, z))))
                return failure("not associative: " + show(M, x) + " " + show(M, y) + " " + show(M, z));
            }
        }
  return rep;
}

bool check_strong_grading(const GradedMonomialRing& R, std::int64_t box) {
  const std::int64_t n = R.modulus;
  const auto& normals = R.base.facet_normals();
  // Facet minima of each piece, read off its module generators.
  std::vector<std::vector<std::int64_t>> low(n);
  for (std::int64_t g = 0; g < n; ++g) {
    if (!R.pieces[g]) continue;
    auto gens = module_generators(R.base, *R.pieces[g]);
    require(!gens.empty(), ErrorKind::Inconsistent, "divisorial ideal without generators");
    for (const auto& z : gens)
      for (auto c : z)
        require(std::abs(c) <= box, ErrorKind::BoxTooSmall, "generator " + to_string(z) + " lies outside the box");
    for (const auto& v : normals) {
      std::int64_t m = dot(gens.front(), v);
      for (const auto& z : gens) m = std::min(m, dot(z, v));
      low[g].push_back(m);
    }
  }

  // (S_g S_h)** is cut out by the facet minima of the products; it must
  // coincide with S_{g+h}.
  for (std::int64_t g = 0; g < n; ++g)
    for (std::int64_t h = 0; h < n; ++h) {
      const std::int64_t t = mod_floor(g + h, n);
      if (!R.pieces[t]) continue;
      if (!R.pieces[g] || !R.pieces[h]) return false;
      const Point shift = scale(wraps(g, h, n), R.wrap);
      for (std::size_t f = 0; f < normals.size(); ++f) {
        const std::int64_t m = checked_add(checked_add(low[g][f], low[h][f]), dot(shift, normals[f]));
        if (m != -R.pieces[t]->coeffs[f]) return false;
      }
    }
  return true;
}

bool check_strong_grading(const GradedCover& cover, std::int64_t box) {
  return check_strong_grading(cover.as_graded_ring(), box);
}

Point CoverMonoid::embed(const GradedCover& cover, const CoverElement& x) const {
  const std::size_t d = cover.base().rank();
  std::vector<Integer> v;
  for (auto c : x.point) v.emplace_back(static_cast<long>(c));
  v.emplace_back(static_cast<long>(x.degree));
  auto y = projection.apply(v);
  Point out;
  for (std::size_t i = 1; i <= d; ++i) out.push_back(to_int64(y[i]));
  return out;
}

CoverElement CoverMonoid::element(const GradedCover& cover, const Point& y) const {
  const std::size_t d = cover.base().rank();
  std::vector<Integer> v{Integer(0)};
  for (auto c : y) v.emplace_back(static_cast<long>(c));
  auto x = inverse.apply(v);
  Point m;
  for (std::size_t i = 0; i < d; ++i) m.push_back(to_int64(x[i]));
  const std::int64_t i0 = to_int64(x[d]);
  const std::int64_t k = floor_div(i0, cover.index());
  return {i0 - k * cover.index(), add(m, scale(k, cover.m_q()))};
}

CoverMonoid cover_as_monoid(const GradedCover& cover) {
  const std::size_t d = cover.base().rank();
  IntMatrix w(d + 1, 1);
  for (std::size_t i = 0; i < d; ++i) w(i, 0) = static_cast<long>(cover.m_q()[i]);
  w(d, 0) = static_cast<long>(-cover.index());
  SmithForm s = smith_normal_form(w);
  require(s.D(0, 0) == 1, ErrorKind::Inconsistent, "trivialization vector is not primitive");

  CoverMonoid cm{cover.base(), s.U, unimodular_inverse(s.U)};
  // l_F(m, i) = <m, v_F> - i, pulled back to quotient coordinates.
  std::vector<Point> normals;
  for (const auto& v : cover.base().facet_normals()) {
    std::vector<Integer> l;
    for (auto c : v) l.emplace_back(static_cast<long>(c));
    l.emplace_back(-1);
    Point row;
    for (std::size_t j = 0; j <= d; ++j) {
      Integer s2 = 0;
      for (std::size_t k = 0; k <= d; ++k) s2 += l[k] * cm.inverse(k, j);
      if (j == 0)
        require(s2 == 0, ErrorKind::Inconsistent, "facet functional does not descend to the quotient");
      else
        row.push_back(to_int64(s2));
    }
    normals.push_back(row);
  }
  cm.monoid = AffineMonoid::from_internal_facets(d, normals);
  return cm;
}

CoverMonoidCheck check_cover_monoid(const GradedCover& cover, const CoverMonoid& cm, std::int64_t box) {
  CoverMonoidCheck out;
  const AffineMonoid& S = cm.monoid;
  const AffineMonoid& R = cover.base();

  for (std::int64_t i = 0; i < cover.index(); ++i)
    for (const auto& m : divisorial_points(R, cover.piece(i), box)) {
      const CoverElement x{i, m};
      const Point y = cm.embed(cover, x);
      if (!S.contains(y) || !(cm.element(cover, y) == x)) out.bijective = false;
    }
  for (const auto& y : box_points(S.rank(), box, [&](const Point& p) { return S.contains(p); })) {
    const CoverElement x = cm.element(cover, y);
    if (!cover.contains(x) || cm.embed(cover, x) != y) out.bijective = false;
    if (x.degree == 0 && !R.contains(x.point)) out.degree_zero_is_base = false;
  }
  for (const auto& m : divisorial_points(R, WeilDivisor::zero(R.num_facets()), box)) {
    const Point y = cm.embed(cover, {0, m});
    if (!S.contains(y) || cm.element(cover, y).degree != 0) out.degree_zero_is_base = false;
  }

  std::vector<CoverElement> samples;
  for (std::int64_t i = 0; i < cover.index(); ++i)
    for (const auto& p : module_generators(R, cover.piece(i))) samples.push_back({i, p});
  for (const auto& x : samples)
    for (const auto& y : samples)
      if (cm.embed(cover, cover.multiply(x, y)) != add(cm.embed(cover, x), cm.embed(cover, y)))
        out.multiplicative = false;

  std::int64_t top = 0;
  for (const auto& h : S.hilbert_basis()) top = std::max(top, S.degree(h));
  out.normal = generates_up_to_degree(S, S.hilbert_basis(), 2 * top);
  return out;
}

std::optional<IntMatrix> find_monoid_isomorphism(const AffineMonoid& A, const AffineMonoid& B, std::size_t budget) {
  if (A.rank() != B.rank()) return std::nullopt;
  const std::size_t d = A.rank();
  const auto& ha = A.hilbert_basis();
  const auto& hb = B.hilbert_basis();
  if (ha.size() != hb.size()) return std::nullopt;

  const Field Q = Field::rationals();
  std::vector<Vec> va;
  for (const auto& h : ha) va.push_back(to_vec(h));
  auto idx = linalg::independent_subset(Q, va);
  if (idx.size() != d) return std::nullopt;
  Matrix Asel(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) Asel(i, j) = static_cast<long>(ha[idx[j]][i]);
  auto Ainv = linalg::inverse(Q, Asel);
  if (!Ainv) return std::nullopt;
  const std::set<Point> target(hb.begin(), hb.end());

  std::vector<std::size_t> pick;
  std::vector<bool> used(hb.size(), false);
  std::size_t tried = 0;
  std::optional<IntMatrix> found;
  std::function<void()> rec = [&] {
    if (found) return;
    if (pick.size() == d) {
      require(++tried <= budget, ErrorKind::BudgetExceeded, "isomorphism search budget exhausted");
      Matrix Bsel(d, d);
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) Bsel(i, j) = static_cast<long>(hb[pick[j]][i]);
      Matrix T = linalg::multiply(Q, Bsel, *Ainv);
      IntMatrix Z(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          if (T(i, j).get_den() != 1) return;
          Z(i, j) = T(i, j).get_num();
        }
      if (abs(Z.determinant()) != 1) return;
      std::set<Point> image;
      for (const auto& h : ha) {
        Point p(d, 0);
        for (std::size_t i = 0; i < d; ++i) {
          Integer s = 0;
          for (std::size_t j = 0; j < d; ++j) s += Z(i, j) * static_cast<long>(h[j]);
          p[i] = to_int64(s);
        }
        image.insert(p);
      }
      if (image == target) found = Z;
      return;
    }
    for (std::size_t k = 0; k < hb.size() && !found; ++k) {
      if (used[k]) continue;
      used[k] = true;
      pick.push_back(k);
      rec();
      pick.pop_back();
      used[k] = false;
    }
  };
  rec();
  return found;
}

GorensteinCoverReport is_gorenstein_cover(const GradedCover& cover) {
  GorensteinCoverReport rep;
  CoverMonoid cm = cover_as_monoid(cover);
  GorensteinReport g = gorenstein(cm.monoid);
  rep.combinatorial = g.gorenstein;
  rep.witness = g.witness;
  rep.all_pieces_cm = true;
  for (std::int64_t i = 0; i < cover.index(); ++i)
    rep.all_pieces_cm = rep.all_pieces_cm && depth(cover.base(), cover.piece(i)).cm;
  return rep;
}

QChangeReport q_change_iso(const GradedCover& cover, const Field& F, const Scalar& r, const Scalar& c) {
  const Scalar rr = F.normalize(r), cc = F.normalize(c);
  require(rr != 0 && cc != 0, ErrorKind::InvalidArgument, "scalars must be nonzero");
  const std::int64_t n = cover.index();
  QChangeReport rep;
  rep.q = cc;
  rep.q_prime = F.mul(cc, F.inv(F.pow(rr, static_cast<std::uint64_t>(n))));
  rep.automorphism = F.pow(rr, static_cast<std::uint64_t>(n)) == F.from_int(1);
  rep.multiplicative = true;
  // phi(x *_q y) = r^{(i+j) mod n} q^e xy and phi(x) *_q' phi(y) = r^{i+j} q'^e xy.
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) {
      const std::int64_t e = wraps(i, j, n);
      Scalar lhs = F.mul(F.pow(rr, mod_floor(i + j, n)), F.pow(rep.q, e));
      Scalar rhs = F.mul(F.pow(rr, i + j), F.pow(rep.q_prime, e));
      if (lhs != rhs) rep.multiplicative = false;
    }
  return rep;
}

bool hom_S_Si_check(const GradedCover& cover, std::int64_t box) {
  const AffineMonoid& R = cover.base();
  const auto& Cl = R.class_group();
  const std::int64_t n = cover.index();
  std::vector<GroupElement> pieces;
  for (std::int64_t g = 0; g < n; ++g) pieces.push_back(Cl.of(cover.piece(g)));
  std::sort(pieces.begin(), pieces.end());

  for (std::int64_t i = 0; i < n; ++i) {
    std::vector<GroupElement> homs;
    for (std::int64_t g = 0; g < n; ++g) homs.push_back(Cl.of(cover.piece(i - g)));
    std::sort(homs.begin(), homs.end());
    if (homs != pieces) return false;

    for (std::int64_t g = 0; g < n; ++g) {
      std::int64_t radius = 0;
      if (!hom_matches(R, cover.piece(g), cover.piece(i), box, &radius)) return false;
      // p((i-g)K) is S_{(i-g) mod n} translated by a multiple of m_q.
      const std::int64_t e = floor_div(i - g, n);
      const WeilDivisor reduced = cover.piece(mod_floor(i - g, n));
      for (const auto& x : divisorial_points(R, cover.piece(i - g), radius))
        if (!R.in_divisorial(reduced, add(x, scale(e, cover.m_q())))) return false;
    }
  }
  return true;
}

}  // namespace cancov
