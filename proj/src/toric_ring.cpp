#include "cancov/toric_ring.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "cancov/field.hpp"
#include "cancov/polyhedral.hpp"

namespace cancov {

struct AffineMonoid::Cache {
  std::once_flag once;
  std::vector<Point> hilbert;
  std::exception_ptr error;
  std::vector<Rational> basis_inverse;  // row-major d x d
};

WeilDivisor WeilDivisor::operator+(const WeilDivisor& o) const {
  require(size() == o.size(), ErrorKind::MonoidMismatch, "divisors over different monoids");
  return {cancov::add(coeffs, o.coeffs)};
}

WeilDivisor WeilDivisor::operator-(const WeilDivisor& o) const {
  require(size() == o.size(), ErrorKind::MonoidMismatch, "divisors over different monoids");
  return {cancov::sub(coeffs, o.coeffs)};
}

WeilDivisor WeilDivisor::operator-() const { return {cancov::scale(-1, coeffs)}; }

WeilDivisor WeilDivisor::scaled(std::int64_t s) const { return {cancov::scale(s, coeffs)}; }

WeilDivisor WeilDivisor::unit(std::size_t facets, std::size_t i) {
  WeilDivisor D = zero(facets);
  D.coeffs.at(i) = 1;
  return D;
}

WeilDivisor ClassGroup::representative(const GroupElement& g) const {
  std::vector<Integer> v = group.lift(g);
  WeilDivisor D;
  for (const auto& x : v) D.coeffs.push_back(to_int64(x));
  return D;
}

IntMatrix congruence_lattice_basis(std::size_t dim, const Congruence& c) {
  require(c.weights.size() == dim, ErrorKind::InvalidArgument, "congruence weights do not match the lattice rank");
  require(c.modulus >= 1, ErrorKind::InvalidArgument, "congruence modulus must be positive");
  IntMatrix row(1, dim + 1);
  for (std::size_t i = 0; i < dim; ++i) row(0, i) = static_cast<long>(c.weights[i]);
  row(0, dim) = static_cast<long>(c.modulus);
  SmithForm s = smith_normal_form(row);
  IntMatrix B(dim, dim);
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t i = 0; i < dim; ++i) B(i, k) = s.V(i, s.rank + k);

  // Column Hermite form: lower triangular, positive diagonal, reduced rows.
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      while (B(i, j) != 0) {
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), B(i, i).get_mpz_t(), B(i, j).get_mpz_t());
        B.add_col(i, j, -q);
        B.swap_cols(i, j);
      }
    }
    if (B(i, i) < 0) B.negate_col(i);
    for (std::size_t j = 0; j < i; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), B(i, j).get_mpz_t(), B(i, i).get_mpz_t());
      B.add_col(j, i, -q);
    }
  }

  // Greedy pairwise size reduction keeps internal coordinates small.
  auto col_dot = [&](std::size_t a, std::size_t b) {
    Integer s = 0;
    for (std::size_t r = 0; r < dim; ++r) s += B(r, a) * B(r, b);
    return s;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        if (i == j) continue;
        Integer nj = col_dot(j, j), q;
        // nearest integer to <b_i,b_j>/<b_j,b_j>
        Integer num = 2 * col_dot(i, j) + nj, den = 2 * nj;
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (q == 0) continue;
        Integer before = col_dot(i, i);
        IntMatrix trial = B;
        trial.add_col(i, j, -q);
        Integer after = 0;
        for (std::size_t r = 0; r < dim; ++r) after += trial(r, i) * trial(r, i);
        if (after < before) {
          B = trial;
          changed = true;
        }
      }
  }
  return B;
}

namespace {

std::vector<Rational> rational_inverse(const IntMatrix& B) {
  const std::size_t d = B.rows();
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = B(i, j);
  auto inv = linalg::inverse(Field::rationals(), m);
  require(inv.has_value(), ErrorKind::InvalidArgument, "lattice basis is singular");
  return inv->data();
}

// Primitive integer vector on the ray spanned by a rational vector.
Point primitive_of(const std::vector<Rational>& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, Integer(x.get_den()));
  std::vector<Integer> z;
  for (const auto& x : v) z.push_back(Integer(x * den));
  z = primitive(z);
  Point p;
  for (const auto& x : z) p.push_back(to_int64(x));
  return p;
}

Point transform_normal(const IntMatrix& B, const Point& v) {
  // Internal functional of an ambient one: B^T v.
  const std::size_t d = B.rows();
  std::vector<Integer> w(d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i) w[k] += B(i, k) * static_cast<long>(v[i]);
  w = primitive(w);
  Point p;
  for (const auto& x : w) p.push_back(to_int64(x));
  return p;
}

template <class Pred>
std::vector<Point> rect_points(const Point& lo, const Point& hi, Pred&& keep, std::size_t budget) {
  const std::size_t d = lo.size();
  double volume = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (hi[i] < lo[i]) return {};
    volume *= static_cast<double>(hi[i] - lo[i] + 1);
  }
  require(volume <= static_cast<double>(budget), ErrorKind::BudgetExceeded,
          "enumeration box exceeds the budget of " + std::to_string(budget) + " points");
  std::vector<Point> out;
  Point p = lo;
  if (d == 0) {
    if (keep(p)) out.push_back(p);
    return out;
  }
  for (;;) {
    if (keep(p)) out.push_back(p);
    std::size_t i = d;
    while (i > 0 && p[i - 1] == hi[i - 1]) {
      p[i - 1] = lo[i - 1];
      --i;
    }
    if (i == 0) break;
    ++p[i - 1];
  }
  return out;
}

// Sum of the `count` largest values.
std::int64_t top_sum(std::vector<std::int64_t> v, std::size_t count) {
  std::sort(v.begin(), v.end(), std::greater<>());
  std::int64_t s = 0;
  for (std::size_t i = 0; i < std::min(count, v.size()); ++i) s = checked_add(s, v[i]);
  return s;
}

// Zonotope-style bounds: every point sum_{i in S} lambda_i r_i with |S| = d
// and 0 <= lambda_i <= 1 lies in [-neg_j, pos_j] in coordinate j.
void ray_extent(const AffineMonoid& M, Point& neg, Point& pos) {
  const std::size_t d = M.rank();
  neg.assign(d, 0);
  pos.assign(d, 0);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<std::int64_t> p, n;
    for (const auto& r : M.rays()) {
      p.push_back(std::max<std::int64_t>(r[j], 0));
      n.push_back(std::max<std::int64_t>(-r[j], 0));
    }
    pos[j] = top_sum(p, d);
    neg[j] = top_sum(n, d);
  }
}

bool degree_then_lex(const AffineMonoid& M, const Point& a, const Point& b) {
  auto da = M.degree(a), db = M.degree(b);
  if (da != db) return da < db;
  return a < b;
}

}  // namespace

AffineMonoid AffineMonoid::from_rays(const std::vector<Point>& rays, const std::optional<Congruence>& congruence) {
  require(!rays.empty(), ErrorKind::NotFullDimensional, "no rays given");
  const std::size_t d = rays.front().size();
  AffineMonoid M;
  M.dim_ = d;
  M.congruence_ = congruence;
  M.basis_ = congruence ? congruence_lattice_basis(d, *congruence) : IntMatrix::identity(d);
  const auto inv = rational_inverse(M.basis_);
  std::vector<Point> internal;
  for (const auto& r : rays) {
    require(r.size() == d, ErrorKind::InvalidArgument, "ray of wrong length");
    require(!is_zero(r), ErrorKind::InvalidArgument, "zero ray");
    std::vector<Rational> u(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) u[i] += inv[i * d + j] * static_cast<long>(r[j]);
    internal.push_back(primitive_of(u));
  }
  require(polyhedral::rank(internal, d) == d, ErrorKind::NotFullDimensional, "rays do not span the lattice");
  std::vector<Point> normals = polyhedral::extreme_rays(internal, d);
  require(polyhedral::rank(normals, d) == d, ErrorKind::NotPointed, "cone is not pointed");
  M.normals_ = normals;
  M.rays_ = polyhedral::extreme_rays(M.normals_, d);
  M.finish();
  return M;
}

AffineMonoid AffineMonoid::from_facets(const std::vector<Point>& normals, const std::optional<Congruence>& congruence) {
  require(!normals.empty(), ErrorKind::NotPointed, "no facet normals given");
  const std::size_t d = normals.front().size();
  AffineMonoid M;
  M.dim_ = d;
  M.congruence_ = congruence;
  M.basis_ = congruence ? congruence_lattice_basis(d, *congruence) : IntMatrix::identity(d);
  std::vector<Point> internal;
  for (const auto& v : normals) {
    require(v.size() == d, ErrorKind::InvalidArgument, "facet normal of wrong length");
    internal.push_back(transform_normal(M.basis_, v));
  }
  std::vector<Point> rays = polyhedral::extreme_rays(internal, d);
  require(polyhedral::rank(rays, d) == d, ErrorKind::NotFullDimensional, "cone is not full-dimensional");
  // Irredundant normals, in input order.
  std::vector<Point> irredundant = polyhedral::extreme_rays(rays, d);
  for (const auto& v : internal)
    if (std::find(irredundant.begin(), irredundant.end(), v) != irredundant.end() &&
        std::find(M.normals_.begin(), M.normals_.end(), v) == M.normals_.end())
      M.normals_.push_back(v);
  M.rays_ = rays;
  M.finish();
  return M;
}

AffineMonoid AffineMonoid::from_internal_facets(std::size_t dim, const std::vector<Point>& normals) {
  AffineMonoid M = from_facets(normals);
  require(M.dim_ == dim, ErrorKind::InvalidArgument, "dimension mismatch");
  return M;
}

void AffineMonoid::finish() {
  cache_ = std::make_shared<Cache>();
  cache_->basis_inverse = rational_inverse(basis_);
  IntMatrix P = IntMatrix::from_points(normals_, dim_);
  class_group_ = std::make_shared<const ClassGroup>(ClassGroup{cokernel(P)});
}

Point AffineMonoid::to_ambient(const Point& u) const {
  Point m(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < dim_; ++j) s += basis_(i, j) * static_cast<long>(u[j]);
    m[i] = to_int64(s);
  }
  return m;
}

std::optional<Point> AffineMonoid::from_ambient(const Point& m) const {
  const auto& inv = cache_->basis_inverse;
  Point u(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < dim_; ++j) s += inv[i * dim_ + j] * static_cast<long>(m[j]);
    if (s.get_den() != 1) return std::nullopt;
    u[i] = to_int64(s);
  }
  return u;
}

std::vector<Point> AffineMonoid::ambient_facet_normals() const {
  const auto& inv = cache_->basis_inverse;
  std::vector<Point> out;
  for (const auto& v : normals_) {
    // <B^{-1} m, v> = <m, B^{-T} v>
    std::vector<Rational> w(dim_);
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t i = 0; i < dim_; ++i) w[j] += inv[i * dim_ + j] * static_cast<long>(v[i]);
    out.push_back(primitive_of(w));
  }
  return out;
}

std::vector<Point> AffineMonoid::ambient_rays() const {
  std::vector<Point> out;
  for (const auto& r : rays_) out.push_back(to_ambient(r));
  return out;
}

std::vector<std::int64_t> AffineMonoid::pairings(const Point& m) const {
  std::vector<std::int64_t> out(normals_.size());
  for (std::size_t f = 0; f < normals_.size(); ++f) out[f] = dot(m, normals_[f]);
  return out;
}

std::int64_t AffineMonoid::degree(const Point& m) const {
  std::int64_t s = 0;
  for (const auto& v : normals_) s = checked_add(s, dot(m, v));
  return s;
}

bool AffineMonoid::contains(const Point& m) const {
  for (const auto& v : normals_)
    if (dot(m, v) < 0) return false;
  return true;
}

bool AffineMonoid::in_divisorial(const WeilDivisor& D, const Point& m) const {
  require(D.size() == normals_.size(), ErrorKind::MonoidMismatch, "divisor length does not match the facet count");
  for (std::size_t f = 0; f < normals_.size(); ++f)
    if (dot(m, normals_[f]) < -D.coeffs[f]) return false;
  return true;
}

WeilDivisor AffineMonoid::principal(const Point& m) const { return {pairings(m)}; }

const std::vector<Point>& AffineMonoid::hilbert_basis() const {
  std::call_once(cache_->once, [this] {
    try {
      cache_->hilbert = cancov::hilbert_basis(*this);
    } catch (...) {
      cache_->error = std::current_exception();
    }
  });
  if (cache_->error) std::rethrow_exception(cache_->error);
  return cache_->hilbert;
}

bool AffineMonoid::same_as(const AffineMonoid& o) const {
  return dim_ == o.dim_ && normals_ == o.normals_ && basis_ == o.basis_;
}

std::vector<Point> hilbert_basis(const AffineMonoid& M, std::size_t budget) {
  Point neg, pos;
  ray_extent(M, neg, pos);
  Point lo(M.rank()), hi(M.rank());
  for (std::size_t j = 0; j < M.rank(); ++j) {
    lo[j] = -neg[j];
    hi[j] = pos[j];
  }
  std::vector<Point> cand =
      rect_points(lo, hi, [&](const Point& p) { return !is_zero(p) && M.contains(p); }, budget);
  std::sort(cand.begin(), cand.end(), [&](const Point& a, const Point& b) { return degree_then_lex(M, a, b); });
  std::vector<Point> basis;
  for (const auto& x : cand) {
    bool reducible = false;
    for (const auto& h : basis)
      if (M.degree(h) < M.degree(x) && M.contains(sub(x, h))) {
        reducible = true;
        break;
      }
    if (!reducible) basis.push_back(x);
  }
  return basis;
}

bool generates_up_to_degree(const AffineMonoid& M, const std::vector<Point>& basis, std::int64_t max_degree) {
  // Degree <= D cuts a polytope whose vertices are 0 and r * D / deg(r).
  const std::size_t d = M.rank();
  Point lo(d, 0), hi(d, 0);
  for (const auto& r : M.rays()) {
    const std::int64_t dr = M.degree(r);
    for (std::size_t j = 0; j < d; ++j) {
      Rational v = Rational(static_cast<long>(r[j])) * static_cast<long>(max_degree) / static_cast<long>(dr);
      Integer f, c;
      mpz_fdiv_q(f.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
      mpz_cdiv_q(c.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
      lo[j] = std::min(lo[j], to_int64(f));
      hi[j] = std::max(hi[j], to_int64(c));
    }
  }
  std::vector<Point> pts = rect_points(
      lo, hi, [&](const Point& p) { return M.contains(p) && M.degree(p) <= max_degree; }, kDefaultBoxBudget);
  std::sort(pts.begin(), pts.end(), [&](const Point& a, const Point& b) { return degree_then_lex(M, a, b); });
  std::set<Point> generated;
  for (const auto& x : pts) {
    if (is_zero(x)) {
      generated.insert(x);
      continue;
    }
    bool ok = false;
    for (const auto& b : basis)
      if (generated.count(sub(x, b))) {
        ok = true;
        break;
      }
    if (!ok) return false;
    generated.insert(x);
  }
  return true;
}

ClassGroup class_group(const AffineMonoid& monoid) { return monoid.class_group(); }

WeilDivisor canonical_divisor(const AffineMonoid& monoid) {
  return {std::vector<std::int64_t>(monoid.num_facets(), -1)};
}

std::int64_t default_box(const WeilDivisor& D) {
  std::int64_t m = 0;
  for (auto a : D.coeffs) m = std::max(m, std::abs(a));
  return 8 * (m + 1);
}

std::vector<Point> divisorial_points(const AffineMonoid& monoid, const WeilDivisor& D, std::int64_t box) {
  require(box >= 0, ErrorKind::InvalidArgument, "box radius must be nonnegative");
  return box_points(monoid.rank(), box, [&](const Point& p) { return monoid.in_divisorial(D, p); });
}

std::pair<Point, Point> generator_bounds(const AffineMonoid& M, const WeilDivisor& D) {
  const std::size_t d = M.rank();
  std::vector<Inequality> sys;
  for (std::size_t f = 0; f < M.num_facets(); ++f) {
    Inequality q{std::vector<Rational>(d), Rational(static_cast<long>(-D.coeffs[f]))};
    for (std::size_t j = 0; j < d; ++j) q.a[j] = static_cast<long>(M.facet_normals()[f][j]);
    sys.push_back(std::move(q));
  }
  auto verts = polyhedral::vertices(sys, d);
  require(!verts.empty(), ErrorKind::InvalidArgument, "divisorial polyhedron has no vertex");
  Point neg, pos;
  ray_extent(M, neg, pos);
  Point lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    Rational mn = verts[0][j], mx = verts[0][j];
    for (const auto& v : verts) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    Integer f, c;
    mpz_fdiv_q(f.get_mpz_t(), mn.get_num_mpz_t(), mn.get_den_mpz_t());
    mpz_cdiv_q(c.get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
    lo[j] = checked_sub(to_int64(f), neg[j]);
    hi[j] = checked_add(to_int64(c), pos[j]);
  }
  return {lo, hi};
}

std::vector<Point> module_generators(const AffineMonoid& M, const WeilDivisor& D, std::size_t budget) {
  auto [lo, hi] = generator_bounds(M, D);
  std::vector<Point> cand = rect_points(lo, hi, [&](const Point& p) { return M.in_divisorial(D, p); }, budget);
  std::sort(cand.begin(), cand.end(), [&](const Point& a, const Point& b) { return degree_then_lex(M, a, b); });
  const auto& hb = M.hilbert_basis();
  std::vector<Point> gens;
  for (const auto& x : cand) {
    bool reducible = false;
    for (const auto& h : hb)
      if (M.in_divisorial(D, sub(x, h))) {
        reducible = true;
        break;
      }
    if (!reducible) gens.push_back(x);
  }
  return gens;
}

std::int64_t generator_radius(const AffineMonoid& M, const WeilDivisor& D) {
  std::int64_t r = 0;
  for (const auto& g : module_generators(M, D))
    for (auto x : g) r = std::max(r, std::abs(x));
  return r;
}

}  // namespace cancov
