#include "cancov/gabriel_cover.hpp"

#include <algorithm>

#include "cancov/divisor_theory.hpp"
#include "cancov/errors.hpp"

namespace cancov {

namespace {

Vec combine(const Field& F, const Vec& acc, const Scalar& s, const Vec& v) {
  Vec out = acc;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = F.add(out[i], F.mul(s, v[i]));
  return out;
}

Matrix act_of(const Field& F, const Module& M, const Vec& a) {
  Matrix out(M.dim, M.dim);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) out = linalg::add(F, out, linalg::scale(F, a[i], M.action[i]));
  return out;
}

}  // namespace

std::optional<std::size_t> SmashAlgebra::index(std::int64_t g, std::int64_t h, std::size_t a) const {
  for (std::size_t s = 0; s < slots.size(); ++s)
    if (slots[s].g == g && slots[s].h == h && slots[s].a == a) return s;
  return std::nullopt;
}

Vec SmashAlgebra::idempotent(std::int64_t g) const {
  Vec e = algebra.zero();
  for (std::size_t a = 0; a < base.dim(); ++a)
    if (base.unit[a] != 0) e[*index(g, g, a)] = base.unit[a];
  return e;
}

Vec SmashAlgebra::entry(const Vec& x, std::int64_t g, std::int64_t h) const {
  Vec out = base.zero();
  for (std::size_t s = 0; s < slots.size(); ++s)
    if (slots[s].g == g && slots[s].h == h) out[slots[s].a] = x[s];
  return out;
}

SmashAlgebra smash_product(const FinDimGradedAlgebra& A) {
  const std::int64_t n = A.modulus;
  SmashAlgebra S;
  S.base = A;
  for (std::int64_t g = 0; g < n; ++g)
    for (std::int64_t h = 0; h < n; ++h)
      for (std::size_t a = 0; a < A.dim(); ++a)
        if (A.degrees[a] == mod_floor(h - g, n)) S.slots.push_back({g, h, a});
  const std::size_t D = S.slots.size();
  S.algebra = FinDimGradedAlgebra::blank(A.field, D);
  for (std::size_t s = 0; s < D; ++s) {
    const auto& x = S.slots[s];
    S.algebra.labels[s] = "[" + std::to_string(x.g) + "," + std::to_string(x.h) + "]" + A.labels[x.a];
  }
  // (g, h, a)(h, k, b) = (g, k, ab).
  for (std::size_t s = 0; s < D; ++s)
    for (std::size_t t = 0; t < D; ++t) {
      const auto& x = S.slots[s];
      const auto& y = S.slots[t];
      if (x.h != y.g) continue;
      for (std::size_t c = 0; c < A.dim(); ++c)
        if (A.c(x.a, y.a, c) != 0) S.algebra.c(s, t, *S.index(x.g, y.h, c)) = A.c(x.a, y.a, c);
    }
  S.algebra.unit = S.algebra.zero();
  for (std::int64_t g = 0; g < n; ++g) S.algebra.unit = combine(A.field, S.algebra.unit, 1, S.idempotent(g));
  return S;
}

Vec diagonal_embed(const SmashAlgebra& S, const Vec& a) {
  Vec x = S.algebra.zero();
  for (std::size_t s = 0; s < S.slots.size(); ++s) x[s] = a[S.slots[s].a];
  return x;
}

Vec average_split(const SmashAlgebra& S, const Vec& x) {
  const Field& F = S.base.field;
  require(F.invertible(S.n()), ErrorKind::NoInverse,
          "the group order " + std::to_string(S.n()) + " is not invertible over " + F.name());
  const Scalar inv = F.inv(F.from_int(S.n()));
  Vec out = S.base.zero();
  for (std::size_t s = 0; s < S.slots.size(); ++s) {
    const std::size_t a = S.slots[s].a;
    out[a] = F.add(out[a], F.mul(inv, x[s]));
  }
  return out;
}

bool is_graded_module(const FinDimGradedAlgebra& A, const GradedModule& M) {
  const std::int64_t n = M.modulus;
  if (n != A.modulus || M.offsets.size() != static_cast<std::size_t>(n + 1) || M.offsets.back() != M.module.dim)
    return false;
  auto piece = [&](std::size_t r) {
    return static_cast<std::int64_t>(std::upper_bound(M.offsets.begin(), M.offsets.end(), r) - M.offsets.begin()) -
           1;
  };
  for (std::size_t a = 0; a < A.dim(); ++a)
    for (std::size_t r = 0; r < M.module.dim; ++r)
      for (std::size_t c = 0; c < M.module.dim; ++c)
        if (M.module.action[a](r, c) != 0 && piece(r) != mod_floor(piece(c) + A.degrees[a], n)) return false;
  return true;
}

GradedModule push_down(const SmashAlgebra& S, const Module& X) {
  const Field& F = S.base.field;
  const std::int64_t n = S.n();
  GradedModule out;
  out.modulus = n;
  out.offsets.push_back(0);
  std::vector<Vec> cols;
  for (std::int64_t g = 0; g < n; ++g) {
    Matrix E = act_of(F, X, S.idempotent(mod_floor(-g, n)));
    std::vector<Vec> image;
    for (std::size_t c = 0; c < X.dim; ++c) image.push_back(E.col(c));
    for (auto& v : linalg::span_basis(F, image)) cols.push_back(v);
    out.offsets.push_back(cols.size());
  }
  require(cols.size() == X.dim, ErrorKind::Inconsistent, "idempotent pieces do not decompose the module");
  out.module.dim = X.dim;
  if (X.dim == 0) {
    out.module.action.assign(S.base.dim(), Matrix(0, 0));
    return out;
  }
  const Matrix T = Matrix::from_cols(cols, X.dim);
  const Matrix Tinv = *linalg::inverse(F, T);
  for (std::size_t a = 0; a < S.base.dim(); ++a) {
    Matrix act = act_of(F, X, diagonal_embed(S, S.base.basis(a)));
    out.module.action.push_back(linalg::multiply(F, Tinv, linalg::multiply(F, act, T)));
  }
  return out;
}

GradedEndReport graded_end(const FinDimGradedAlgebra& A) {
  const Field& F = A.field;
  const std::int64_t n = A.modulus;
  const std::size_t d = A.dim();
  const std::size_t N = static_cast<std::size_t>(n) * d;
  const SmashAlgebra S = smash_product(A);
  GradedEndReport rep;
  rep.smash_dim = S.algebra.dim();

  // Copy g of V = A^n is A(-g); basis vector (g, y) sits in degree deg y + g.
  auto piece = [&](std::size_t r) { return mod_floor(A.degrees[r % d] + static_cast<std::int64_t>(r / d), n); };
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c)
      if (piece(r) == piece(c)) unknowns.emplace_back(r, c);
  std::vector<std::vector<std::size_t>> slot(N, std::vector<std::size_t>(N, unknowns.size()));
  for (std::size_t u = 0; u < unknowns.size(); ++u) slot[unknowns[u].first][unknowns[u].second] = u;

  // Right linearity: Phi R_b = R_b Phi for the generators b.
  const auto gens = algebra_generators(A);
  std::vector<Matrix> R;
  for (auto b : gens) {
    Matrix Rb(N, N);
    Matrix r = A.right_mult(A.basis(b));
    for (std::int64_t g = 0; g < n; ++g)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) Rb(g * d + i, g * d + j) = r(i, j);
    R.push_back(std::move(Rb));
  }
  Matrix sys(R.size() * N * N, unknowns.size());
  std::size_t row = 0;
  for (const auto& Rb : R)
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c, ++row)
        for (std::size_t t = 0; t < N; ++t) {
          if (Rb(t, c) != 0 && slot[r][t] < unknowns.size())
            sys(row, slot[r][t]) = F.add(sys(row, slot[r][t]), Rb(t, c));
          if (Rb(r, t) != 0 && slot[t][c] < unknowns.size())
            sys(row, slot[t][c]) = F.sub(sys(row, slot[t][c]), Rb(r, t));
        }
  rep.end_dim = linalg::nullspace(F, sys).size();

  // x -> blockwise left multiplication, block (g, h) maps copy h to copy g.
  auto phi = [&](const Vec& x) {
    Matrix P(N, N);
    for (std::int64_t g = 0; g < n; ++g)
      for (std::int64_t h = 0; h < n; ++h) {
        Matrix L = A.left_mult(S.entry(x, g, h));
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) P(g * d + i, h * d + j) = L(i, j);
      }
    return P;
  };
  std::vector<Matrix> images;
  for (std::size_t s = 0; s < rep.smash_dim; ++s) images.push_back(phi(S.algebra.basis(s)));

  rep.image_in_end = true;
  for (const auto& P : images) {
    for (std::size_t r = 0; r < N && rep.image_in_end; ++r)
      for (std::size_t c = 0; c < N; ++c)
        if (P(r, c) != 0 && piece(r) != piece(c)) {
          rep.image_in_end = false;
          break;
        }
    for (const auto& Rb : R)
      if (linalg::multiply(F, P, Rb) != linalg::multiply(F, Rb, P)) rep.image_in_end = false;
  }
  std::vector<Vec> flat;
  for (const auto& P : images) flat.push_back(P.data());
  rep.injective = linalg::independent_subset(F, flat).size() == images.size();

  rep.multiplicative = phi(S.algebra.unit) == Matrix::identity(N);
  for (std::size_t s = 0; s < rep.smash_dim && rep.multiplicative; ++s)
    for (std::size_t t = 0; t < rep.smash_dim; ++t)
      if (phi(S.algebra.multiply(S.algebra.basis(s), S.algebra.basis(t))) !=
          linalg::multiply(F, images[s], images[t])) {
        rep.multiplicative = false;
        break;
      }
  return rep;
}

SkewComparison skew_group_ring(const FinDimGradedAlgebra& A, const Scalar& zeta) {
  const Field& F = A.field;
  const std::int64_t n = A.modulus;
  const std::size_t d = A.dim();
  const Scalar z = F.normalize(zeta);
  require(F.invertible(n), ErrorKind::NoInverse,
          "the group order " + std::to_string(n) + " is not invertible over " + F.name());
  require(F.pow(z, static_cast<std::uint64_t>(n)) == 1, ErrorKind::BadRoot,
          F.format(z) + " is not an " + std::to_string(n) + "-th root of unity");
  for (std::int64_t k = 1; k < n; ++k)
    require(F.pow(z, static_cast<std::uint64_t>(k)) != 1, ErrorKind::BadRoot,
            F.format(z) + " has order " + std::to_string(k) + " < " + std::to_string(n));

  auto zpow = [&](std::int64_t e) { return F.pow(z, static_cast<std::uint64_t>(mod_floor(e, n))); };
  SkewComparison out;
  out.skew = FinDimGradedAlgebra::blank(F, static_cast<std::size_t>(n) * d, n);
  auto at = [&](std::int64_t k, std::size_t a) { return static_cast<std::size_t>(k) * d + a; };
  for (std::int64_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < d; ++a) {
      out.skew.labels[at(k, a)] = A.labels[a] + "*f" + std::to_string(k);
      out.skew.degrees[at(k, a)] = A.degrees[a];
    }
  out.skew.unit = out.skew.zero();
  for (std::size_t a = 0; a < d; ++a) out.skew.unit[at(0, a)] = A.unit[a];
  for (std::int64_t k = 0; k < n; ++k)
    for (std::int64_t l = 0; l < n; ++l)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          const Scalar tw = zpow(-k * A.degrees[b]);
          for (std::size_t c = 0; c < d; ++c)
            if (A.c(a, b, c) != 0) out.skew.c(at(k, a), at(l, b), at(mod_floor(k + l, n), c)) = F.mul(tw, A.c(a, b, c));
        }

  const SmashAlgebra S = smash_product(A);
  auto character = [&](std::int64_t k) {
    Vec D = S.algebra.zero();
    for (std::int64_t g = 0; g < n; ++g) D = combine(F, D, zpow(k * g), S.idempotent(g));
    return D;
  };
  std::vector<Vec> chars;
  for (std::int64_t k = 0; k < n; ++k) chars.push_back(character(k));
  auto psi = [&](const Vec& x) {
    Vec y = S.algebra.zero();
    for (std::int64_t k = 0; k < n; ++k) {
      Vec a(x.begin() + static_cast<std::ptrdiff_t>(at(k, 0)), x.begin() + static_cast<std::ptrdiff_t>(at(k, 0) + d));
      y = combine(F, y, 1, S.algebra.multiply(diagonal_embed(S, a), chars[k]));
    }
    return y;
  };
  std::vector<Vec> images;
  for (std::size_t s = 0; s < out.skew.dim(); ++s) images.push_back(psi(out.skew.basis(s)));
  out.map = Matrix::from_cols(images, S.algebra.dim());
  out.bijective = out.skew.dim() == S.algebra.dim() && linalg::rank(F, out.map) == S.algebra.dim();
  out.multiplicative = psi(out.skew.unit) == S.algebra.unit;
  for (std::size_t s = 0; s < out.skew.dim() && out.multiplicative; ++s)
    for (std::size_t t = 0; t < out.skew.dim(); ++t)
      if (psi(out.skew.multiply(out.skew.basis(s), out.skew.basis(t))) !=
          S.algebra.multiply(images[s], images[t])) {
        out.multiplicative = false;
        break;
      }

  out.vandermonde = Matrix(n, n);
  for (std::int64_t k = 0; k < n; ++k)
    for (std::int64_t g = 0; g < n; ++g) out.vandermonde(k, g) = zpow(k * g);
  out.vandermonde_det = linalg::determinant(F, out.vandermonde);
  return out;
}

std::optional<Matrix> matrix_algebra_iso(const FinDimGradedAlgebra& A) {
  const Field& F = A.field;
  Decomposition dec;
  try {
    dec = decompose(A);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotSplit) return std::nullopt;
    throw;
  }
  const std::size_t m = dec.idempotents.size();
  if (!dec.radical.empty() || dec.class_rep.size() != 1 || m * m != A.dim()) return std::nullopt;
  const auto& e = dec.idempotents;

  // E_1j spans e_1 A e_j; E_j1 in e_j A e_1 is scaled so that E_1j E_j1 = e_1.
  std::vector<Vec> row(m), col(m);
  row[0] = col[0] = e[0];
  for (std::size_t j = 1; j < m; ++j) {
    std::optional<Vec> u, v;
    for (std::size_t t = 0; t < A.dim() && (!u || !v); ++t) {
      Vec x = A.multiply(A.multiply(e[0], A.basis(t)), e[j]);
      Vec y = A.multiply(A.multiply(e[j], A.basis(t)), e[0]);
      if (!u && x != A.zero()) u = x;
      if (!v && y != A.zero()) v = y;
    }
    if (!u || !v) return std::nullopt;
    Vec uv = A.multiply(*u, *v);
    std::size_t p = 0;
    while (p < A.dim() && e[0][p] == 0) ++p;
    if (p == A.dim() || uv[p] == 0) return std::nullopt;
    const Scalar c = F.mul(uv[p], F.inv(e[0][p]));
    row[j] = *u;
    col[j] = combine(F, A.zero(), F.inv(c), *v);
  }
  std::vector<Vec> units;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) units.push_back(A.multiply(col[i], row[j]));
  Matrix T = Matrix::from_cols(units, A.dim());
  if (!linalg::inverse(F, T)) return std::nullopt;
  const FinDimGradedAlgebra B = change_basis(A, T);
  const FinDimGradedAlgebra M = matrix_algebra(F, m);
  if (B.mult != M.mult || B.unit != M.unit) return std::nullopt;
  return T;
}

bool endR_S_iso_check(const GradedCover& cover, std::int64_t box, std::int64_t* radius) {
  const AffineMonoid& R = cover.base();
  const std::int64_t n = cover.index();
  std::int64_t wrap = 0;
  for (auto c : cover.m_q()) wrap = std::max(wrap, std::abs(c));
  std::int64_t checked = box;
  bool ok = true;
  for (std::int64_t g = 0; g < n && ok; ++g) {
    const WeilDivisor Sg = cover.piece(g);
    const std::int64_t r = generator_radius(R, Sg);
    require(r <= box, ErrorKind::BoxTooSmall,
            "generators of S_" + std::to_string(g) + " reach radius " + std::to_string(r) + " beyond the box");
    const std::int64_t rho = box - r;
    checked = std::min(checked, rho);
    const auto source = divisorial_points(R, Sg, box);
    for (std::int64_t h = 0; h < n && ok; ++h) {
      auto hom = hom_realization(R, source, cover.piece(h), rho);
      // Block (g, h) of the smash is S_{h-g}; below the diagonal the
      // identification passes through q, i.e. a shift by m_q.
      const std::int64_t w = floor_div(h - g, n);
      std::vector<Point> expected;
      for (const auto& p : divisorial_points(R, cover.piece(h - g - w * n), rho + wrap)) {
        Point y = sub(p, scale(w, cover.m_q()));
        if (std::all_of(y.begin(), y.end(), [&](std::int64_t c) { return std::abs(c) <= rho; }))
          expected.push_back(y);
      }
      std::sort(hom.begin(), hom.end());
      std::sort(expected.begin(), expected.end());
      ok = hom == expected;
    }
  }
  if (radius) *radius = checked;
  return ok;
}

}  // namespace cancov
