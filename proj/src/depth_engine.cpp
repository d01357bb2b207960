#include "cancov/depth_engine.hpp"

#include <algorithm>
#include <map>

#include "cancov/field.hpp"
#include "cancov/parallel.hpp"
#include "cancov/polyhedral.hpp"

namespace cancov {

namespace {

constexpr std::size_t kMaxFacets = 16;

Vec to_vec(const Point& p) {
  Vec v;
  for (auto x : p) v.emplace_back(static_cast<long>(x));
  return v;
}

// First independent rays of a face, in ray order.
std::vector<Point> face_basis(const AffineMonoid& M, const Face& f) {
  std::vector<Vec> vs;
  for (auto r : f.rays) vs.push_back(to_vec(M.rays()[r]));
  std::vector<Point> out;
  for (auto i : linalg::independent_subset(Field::rationals(), vs)) out.push_back(M.rays()[f.rays[i]]);
  return out;
}

bool contains_all(const std::vector<std::size_t>& big, const std::vector<std::size_t>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Matrix coboundary(const FaceLattice& L, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Matrix m(rows.size(), cols.size());
  std::map<std::size_t, std::size_t> row_of;
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = i;
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (auto [t, sign] : L.cofaces[cols[j]]) {
      auto it = row_of.find(t);
      if (it != row_of.end()) m(it->second, j) = sign;
    }
  return m;
}

bool smith_torsion_free(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return true;
  IntMatrix z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) z(i, j) = m(i, j).get_num();
  auto s = smith_normal_form(z);
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) != 1) return false;
  return true;
}

}  // namespace

int incidence(const AffineMonoid& M, const Face& sigma, const Face& tau) {
  const auto Bt = face_basis(M, tau);
  auto cols = face_basis(M, sigma);
  for (auto r : tau.rays)
    if (!std::binary_search(sigma.rays.begin(), sigma.rays.end(), r)) {
      cols.push_back(M.rays()[r]);
      break;
    }
  require(cols.size() == Bt.size(), ErrorKind::Inconsistent, "faces are not incident in codimension one");
  const Field Q = Field::rationals();
  std::vector<Vec> basis;
  for (const auto& b : Bt) basis.push_back(to_vec(b));
  Matrix coords(Bt.size(), Bt.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto c = linalg::coordinates(Q, basis, to_vec(cols[j]));
    require(c.has_value(), ErrorKind::Inconsistent, "ray outside the span of its face");
    for (std::size_t i = 0; i < c->size(); ++i) coords(i, j) = (*c)[i];
  }
  return sgn(linalg::determinant(Q, coords)) > 0 ? 1 : -1;
}

FaceLattice face_lattice(const AffineMonoid& M) {
  const std::size_t nf = M.num_facets();
  require(nf <= kMaxFacets, ErrorKind::BudgetExceeded, "too many facets for face enumeration");
  const auto& rays = M.rays();
  std::map<std::vector<std::size_t>, Face> by_rays;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nf); ++mask) {
    Face f;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      bool tight = true;
      for (std::size_t F = 0; F < nf && tight; ++F)
        if ((mask >> F & 1) && dot(rays[r], M.facet_normals()[F]) != 0) tight = false;
      if (tight) f.rays.push_back(r);
    }
    if (by_rays.count(f.rays)) continue;
    for (std::size_t F = 0; F < nf; ++F) {
      bool tight = true;
      for (auto r : f.rays)
        if (dot(rays[r], M.facet_normals()[F]) != 0) tight = false;
      if (tight) f.facets.push_back(F);
    }
    std::vector<Point> pts;
    for (auto r : f.rays) pts.push_back(rays[r]);
    f.dim = pts.empty() ? 0 : polyhedral::rank(pts, M.rank());
    by_rays.emplace(f.rays, f);
  }

  FaceLattice L;
  for (auto& [key, f] : by_rays) L.faces.push_back(f);
  std::stable_sort(L.faces.begin(), L.faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.rays < b.rays;
  });
  L.by_dim.assign(M.rank() + 1, {});
  for (std::size_t i = 0; i < L.faces.size(); ++i) L.by_dim[L.faces[i].dim].push_back(i);
  L.cofaces.assign(L.faces.size(), {});
  for (std::size_t s = 0; s < L.faces.size(); ++s)
    for (std::size_t t = 0; t < L.faces.size(); ++t) {
      const Face &a = L.faces[s], &b = L.faces[t];
      if (b.dim == a.dim + 1 && contains_all(a.facets, b.facets))
        L.cofaces[s].emplace_back(t, incidence(M, a, b));
    }

  // The full complex must square to zero.
  const Field Q = Field::rationals();
  for (std::size_t i = 0; i + 2 <= M.rank(); ++i) {
    Matrix d1 = coboundary(L, L.by_dim[i + 1], L.by_dim[i]);
    Matrix d2 = coboundary(L, L.by_dim[i + 2], L.by_dim[i + 1]);
    require(linalg::multiply(Q, d2, d1).is_zero(), ErrorKind::Inconsistent, "face complex orientation is not a complex");
  }
  return L;
}

std::vector<Chamber> chambers(const AffineMonoid& M, const WeilDivisor& D) {
  require(D.size() == M.num_facets(), ErrorKind::MonoidMismatch, "divisor length does not match the facet count");
  const std::size_t nf = M.num_facets(), d = M.rank();
  require(nf <= kMaxFacets, ErrorKind::BudgetExceeded, "too many facets for chamber enumeration");
  const std::size_t total = std::size_t{1} << nf;
  std::vector<std::optional<Chamber>> slots(total);
  parallel_for(total, [&](std::size_t p) {
    Chamber c;
    c.signs.resize(nf);
    std::vector<Inequality> sys;
    for (std::size_t F = 0; F < nf; ++F) {
      c.signs[F] = ((p >> (nf - 1 - F)) & 1) == 0;
      Inequality q{std::vector<Rational>(d), 0};
      const Rational a = static_cast<long>(D.coeffs[F]);
      for (std::size_t j = 0; j < d; ++j) q.a[j] = static_cast<long>(M.facet_normals()[F][j]);
      if (c.signs[F]) {
        q.b = -a;
      } else {
        for (auto& x : q.a) x = -x;
        q.b = a + 1;
      }
      sys.push_back(std::move(q));
    }
    auto w = polyhedral::feasible_point(sys, d);
    if (!w) return;
    c.rational_witness = *w;
    c.lattice_witness = polyhedral::integer_point(sys, d);
    slots[p] = std::move(c);
  });
  std::vector<Chamber> out;
  for (auto& s : slots)
    if (s) out.push_back(std::move(*s));
  return out;
}

ChamberCohomology chamber_cohomology(const AffineMonoid& M, const FaceLattice& L, const std::vector<bool>& signs) {
  const std::size_t d = M.rank();
  std::vector<std::vector<std::size_t>> visible(d + 1);
  for (std::size_t k = 0; k <= d; ++k)
    for (auto f : L.by_dim[k]) {
      bool ok = true;
      for (auto F : L.faces[f].facets) ok = ok && signs[F];
      if (ok) visible[k].push_back(f);
    }
  const Field Q = Field::rationals();
  ChamberCohomology out;
  std::vector<std::size_t> rk(d + 1, 0);  // rank of d^k : C^k -> C^{k+1}
  for (std::size_t k = 0; k < d; ++k) {
    if (visible[k].empty() || visible[k + 1].empty()) continue;
    Matrix m = coboundary(L, visible[k + 1], visible[k]);
    rk[k] = linalg::rank(Q, m);
    out.torsion_free = out.torsion_free && smith_torsion_free(m);
  }
  out.betti.resize(d + 1);
  for (std::size_t k = 0; k <= d; ++k)
    out.betti[k] = visible[k].size() - rk[k] - (k ? rk[k - 1] : 0);
  return out;
}

DepthReport depth(const AffineMonoid& M, const WeilDivisor& D) {
  const std::size_t d = M.rank();
  FaceLattice L = face_lattice(M);
  std::vector<Chamber> cs = chambers(M, D);
  std::vector<ChamberCohomology> coh(cs.size());
  parallel_for(cs.size(), [&](std::size_t i) {
    if (cs[i].lattice_witness) coh[i] = chamber_cohomology(M, L, cs[i].signs);
  });

  DepthReport rep;
  rep.divisor = D;
  rep.chambers_total = cs.size();
  rep.depth = d + 1;
  bool top = false;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!cs[i].lattice_witness) continue;
    ++rep.chambers_lattice;
    rep.torsion_free = rep.torsion_free && coh[i].torsion_free;
    top = top || coh[i].betti[d] != 0;
    for (std::size_t k = 0; k < rep.depth && k <= d; ++k)
      if (coh[i].betti[k] != 0) {
        rep.depth = k;
        rep.witness = cs[i];
        rep.witness_betti = coh[i].betti;
        break;
      }
  }
  require(top, ErrorKind::Inconsistent, "top local cohomology vanishes");
  rep.cm = rep.depth == d;
  return rep;
}

bool is_cm(const AffineMonoid& M, const WeilDivisor& D) { return depth(M, D).cm; }

GorensteinReport gorenstein(const AffineMonoid& M) {
  const Field Q = Field::rationals();
  std::vector<Vec> rows;
  for (const auto& v : M.facet_normals()) rows.push_back(to_vec(v));
  Matrix P = Matrix::from_rows(rows, M.rank());
  auto sol = linalg::solve(Q, P, Vec(M.num_facets(), Scalar(1)));
  GorensteinReport rep;
  const bool trivial_class = M.class_group().group.is_zero(M.class_group().of(canonical_divisor(M)));
  if (sol) {
    bool integral = true;
    for (const auto& x : *sol) integral = integral && x.get_den() == 1;
    if (integral) {
      Point m;
      for (const auto& x : *sol) m.push_back(to_int64(x));
      rep.witness = m;
    }
  }
  rep.gorenstein = rep.witness.has_value();
  require(rep.gorenstein == trivial_class, ErrorKind::Inconsistent,
          "canonical class and height-one point disagree");
  return rep;
}

}  // namespace cancov
