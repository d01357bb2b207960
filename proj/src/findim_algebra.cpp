#include "cancov/findim_algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "cancov/errors.hpp"
#include "cancov/gabriel_cover.hpp"
#include "cancov/parallel.hpp"

namespace cancov {

namespace {

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x == 0; });
}

Vec vadd(const Field& F, const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.add(a[i], b[i]);
  return out;
}

Vec vsub(const Field& F, const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.sub(a[i], b[i]);
  return out;
}

Vec vscale(const Field& F, const Scalar& s, const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.mul(s, a[i]);
  return out;
}

/// Span kept in reduced echelon form; coordinates are read off the pivots.
class Subspace {
public:
  Subspace(const Field& F, std::size_t n) : F_(F), n_(n) {}
  Subspace(const Field& F, std::size_t n, const std::vector<Vec>& vs) : F_(F), n_(n) {
    for (const auto& v : vs) insert(v);
  }

  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }

  Vec reduce(Vec v) const {
    for (std::size_t t = 0; t < rows_.size(); ++t) {
      const Scalar c = v[pivots_[t]];
      if (c != 0)
        for (std::size_t i = 0; i < n_; ++i) v[i] = F_.sub(v[i], F_.mul(c, rows_[t][i]));
    }
    return v;
  }

  bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

  /// Adds v; false when v already lies in the span.
  bool insert(const Vec& v) {
    Vec r = reduce(v);
    std::size_t p = 0;
    while (p < n_ && r[p] == 0) ++p;
    if (p == n_) return false;
    r = vscale(F_, F_.inv(r[p]), r);
    for (auto& row : rows_) {
      const Scalar c = row[p];
      if (c != 0)
        for (std::size_t i = 0; i < n_; ++i) row[i] = F_.sub(row[i], F_.mul(c, r[i]));
    }
    rows_.push_back(r);
    pivots_.push_back(p);
    return true;
  }

  /// Coordinates with respect to the current (echelon) rows of a vector in the span.
  Vec coords(const Vec& v) const {
    Vec c(rows_.size());
    for (std::size_t t = 0; t < rows_.size(); ++t) c[t] = v[pivots_[t]];
    return c;
  }

private:
  Field F_;
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

Matrix act_of(const Field& F, const Module& M, const Vec& a) {
  Matrix out(M.dim, M.dim);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) out = linalg::add(F, out, linalg::scale(F, a[i], M.action[i]));
  return out;
}

/// Restriction of the action to an invariant subspace.
Module restrict_to(const Field& F, const Module& M, const Subspace& W) {
  Module out;
  out.dim = W.dim();
  for (const auto& X : M.action) {
    Matrix Y(out.dim, out.dim);
    for (std::size_t c = 0; c < out.dim; ++c) {
      Vec w = linalg::apply(F, X, W.rows()[c]);
      require(W.contains(w), ErrorKind::Inconsistent, "subspace is not a submodule");
      Vec k = W.coords(w);
      for (std::size_t r = 0; r < out.dim; ++r) Y(r, c) = k[r];
    }
    out.action.push_back(std::move(Y));
  }
  return out;
}

Scalar random_scalar(const Field& F, std::mt19937_64& rng) {
  if (F.is_rational()) return F.from_int(static_cast<std::int64_t>(rng() % 7) - 3);
  return F.from_int(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(F.characteristic())));
}

std::vector<Integer> divisors(Integer a) {
  if (a < 0) a = -a;
  std::vector<Integer> out;
  if (a == 0 || a > Integer("1000000000000")) return out;
  for (Integer d = 1; d * d <= a; ++d)
    if (a % d == 0) {
      out.push_back(d);
      if (d * d != a) out.push_back(a / d);
    }
  return out;
}

/// A root in F of the monic polynomial (low to high), if one is found.
std::optional<Scalar> find_root(const Field& F, const Vec& mu) {
  auto eval = [&](const Scalar& x) {
    Scalar s = 0;
    for (std::size_t k = mu.size(); k-- > 0;) s = F.add(F.mul(s, x), mu[k]);
    return s;
  };
  if (!F.is_rational()) {
    const std::int64_t p = F.characteristic();
    if (p > 1'000'000) return std::nullopt;
    for (std::int64_t v = 0; v < p; ++v)
      if (eval(F.from_int(v)) == 0) return F.from_int(v);
    return std::nullopt;
  }
  if (mu[0] == 0) return Scalar(0);
  Integer l = 1;
  for (const auto& c : mu) l = lcm(l, Integer(c.get_den()));
  std::vector<Integer> a;
  for (const auto& c : mu) a.push_back(Integer(c * l));
  for (const auto& p : divisors(a.front()))
    for (const auto& q : divisors(a.back()))
      for (int s : {1, -1}) {
        Scalar x(Integer(s * p), q);
        x.canonicalize();
        if (eval(x) == 0) return x;
      }
  return std::nullopt;
}

/// Primitive orthogonal idempotents below e in a semisimple split algebra.
void split_idempotent(const FinDimGradedAlgebra& B, const Vec& e, std::mt19937_64& rng, std::vector<Vec>& out) {
  const Field& F = B.field;
  const std::size_t d = B.dim();
  Subspace corner(F, d);
  for (std::size_t k = 0; k < d; ++k) corner.insert(B.multiply(B.multiply(e, B.basis(k)), e));
  if (corner.dim() == 1) {
    out.push_back(e);
    return;
  }
  const std::vector<Vec> cb = corner.rows();
  for (std::size_t trial = 0; trial < cb.size() + 256; ++trial) {
    Vec a;
    if (trial < cb.size()) {
      a = cb[trial];
    } else {
      a = B.zero();
      for (const auto& v : cb) a = vadd(F, a, vscale(F, random_scalar(F, rng), v));
    }
    // Krylov sequence e, a, a^2, ... inside the corner eBe.
    std::vector<Vec> powers{e};
    std::optional<Vec> rel;
    while (!rel) {
      Vec next = B.multiply(powers.back(), a);
      rel = linalg::coordinates(F, powers, next);
      if (!rel) powers.push_back(next);
    }
    const std::size_t k = powers.size();
    if (k < 2) continue;
    Vec mu(k + 1);
    for (std::size_t i = 0; i < k; ++i) mu[i] = F.neg((*rel)[i]);
    mu[k] = 1;
    auto lambda = find_root(F, mu);
    if (!lambda) continue;
    // mu = (t - lambda) h; h(a) / h(lambda) projects onto the lambda part.
    Vec h(k);
    Scalar carry = 0;
    for (std::size_t i = k; i-- > 0;) {
      carry = F.add(mu[i + 1], F.mul(carry, *lambda));
      h[i] = carry;
    }
    Scalar h_lambda = 0;
    for (std::size_t i = k; i-- > 0;) h_lambda = F.add(F.mul(h_lambda, *lambda), h[i]);
    if (h_lambda == 0) continue;
    Vec f = B.zero();
    for (std::size_t i = 0; i < k; ++i) f = vadd(F, f, vscale(F, h[i], powers[i]));
    f = vscale(F, F.inv(h_lambda), f);
    if (is_zero_vec(f) || f == e || B.multiply(f, f) != f) continue;
    split_idempotent(B, f, rng, out);
    split_idempotent(B, vsub(F, e, f), rng, out);
    return;
  }
  fail(ErrorKind::NotSplit, "semisimple quotient has a corner that is not split over " + F.name());
}

/// Tr(X^(p^i)) / p^i mod p for an integer lift X, computed modulo p^(i+1).
std::int64_t power_trace(std::vector<std::int64_t> X, std::size_t n, std::int64_t p, std::size_t i) {
  std::int64_t mod = p, pi = 1;
  for (std::size_t t = 0; t < i; ++t) {
    mod *= p;
    pi *= p;
  }
  auto mul = [&](const std::vector<std::int64_t>& A, const std::vector<std::int64_t>& B) {
    std::vector<std::int64_t> C(n * n, 0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k) {
        const std::int64_t a = A[r * n + k];
        if (!a) continue;
        for (std::size_t c = 0; c < n; ++c) C[r * n + c] = (C[r * n + c] + a * B[k * n + c]) % mod;
      }
    return C;
  };
  for (auto& x : X) x %= mod;
  for (std::size_t t = 0; t < i; ++t) {
    auto Y = X;
    for (std::int64_t s = 1; s < p; ++s) Y = mul(Y, X);
    X = std::move(Y);
  }
  std::int64_t tr = 0;
  for (std::size_t r = 0; r < n; ++r) tr = (tr + X[r * n + r]) % mod;
  require(tr % pi == 0, ErrorKind::Inconsistent, "trace power is not divisible as expected");
  return (tr / pi) % p;
}

std::string label_of(const std::string& prefix, std::size_t i) { return prefix + std::to_string(i); }

}  // namespace

Vec FinDimGradedAlgebra::basis(std::size_t i) const {
  Vec v = zero();
  v[i] = 1;
  return v;
}

Vec FinDimGradedAlgebra::multiply(const Vec& x, const Vec& y) const {
  const std::size_t d = dim();
  Vec z = zero();
  for (std::size_t i = 0; i < d; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (y[j] == 0) continue;
      const Scalar s = x[i] * y[j];
      for (std::size_t k = 0; k < d; ++k)
        if (c(i, j, k) != 0) z[k] += s * c(i, j, k);
    }
  }
  for (auto& v : z) v = field.normalize(v);
  return z;
}

Matrix FinDimGradedAlgebra::left_mult(const Vec& x) const {
  Matrix L(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    Vec col = multiply(x, basis(j));
    for (std::size_t k = 0; k < dim(); ++k) L(k, j) = col[k];
  }
  return L;
}

Matrix FinDimGradedAlgebra::right_mult(const Vec& x) const {
  Matrix R(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    Vec col = multiply(basis(j), x);
    for (std::size_t k = 0; k < dim(); ++k) R(k, j) = col[k];
  }
  return R;
}

FinDimGradedAlgebra FinDimGradedAlgebra::blank(const Field& F, std::size_t d, std::int64_t modulus) {
  FinDimGradedAlgebra A;
  A.field = F;
  A.modulus = modulus;
  for (std::size_t i = 0; i < d; ++i) A.labels.push_back(label_of("b", i));
  A.degrees.assign(d, 0);
  A.mult.assign(d * d * d, Scalar(0));
  A.unit.assign(d, Scalar(0));
  if (d) A.unit[0] = 1;
  return A;
}

ValidationReport validate(const FinDimGradedAlgebra& A) {
  const std::size_t d = A.dim();
  ValidationReport rep;
  auto bad = [&](std::string kind, std::vector<std::size_t> w, std::string msg) {
    rep.ok = false;
    rep.kind = std::move(kind);
    rep.witness = std::move(w);
    rep.message = std::move(msg);
    return rep;
  };
  if (A.modulus < 1) return bad("shape", {}, "modulus must be positive");
  if (A.degrees.size() != d || A.unit.size() != d || A.mult.size() != d * d * d)
    return bad("shape", {}, "basis, degrees, unit and structure constants disagree in size");
  for (std::size_t i = 0; i < d; ++i)
    if (A.degrees[i] < 0 || A.degrees[i] >= A.modulus)
      return bad("shape", {i}, "degree of " + A.labels[i] + " is not a residue");

  // Sparse products of basis pairs.
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> prod(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (A.c(i, j, k) != 0) {
          if (A.degrees[k] != mod_floor(A.degrees[i] + A.degrees[j], A.modulus))
            return bad("grading", {i, j, k},
                       A.labels[i] + " * " + A.labels[j] + " has a component on " + A.labels[k] +
                           " of the wrong degree");
          prod[i * d + j].emplace_back(k, A.c(i, j, k));
        }

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        Vec lhs = A.zero(), rhs = A.zero();
        for (const auto& [l, a] : prod[i * d + j])
          for (const auto& [m, b] : prod[l * d + k]) lhs[m] += a * b;
        for (const auto& [l, a] : prod[j * d + k])
          for (const auto& [m, b] : prod[i * d + l]) rhs[m] += a * b;
        for (std::size_t m = 0; m < d; ++m)
          if (A.field.normalize(lhs[m]) != A.field.normalize(rhs[m]))
            return bad("associativity", {i, j, k},
                       "(" + A.labels[i] + " " + A.labels[j] + ") " + A.labels[k] + " != " + A.labels[i] + " (" +
                           A.labels[j] + " " + A.labels[k] + ")");
      }

  for (std::size_t i = 0; i < d; ++i) {
    if (A.multiply(A.unit, A.basis(i)) != A.basis(i) || A.multiply(A.basis(i), A.unit) != A.basis(i))
      return bad("unit", {i}, "unit does not fix " + A.labels[i]);
  }
  return rep;
}

FinDimGradedAlgebra opposite(const FinDimGradedAlgebra& A) {
  FinDimGradedAlgebra B = A;
  const std::size_t d = A.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) B.c(i, j, k) = A.c(j, i, k);
  return B;
}

FinDimGradedAlgebra change_basis(const FinDimGradedAlgebra& A, const Matrix& T) {
  const Field& F = A.field;
  const std::size_t d = A.dim();
  auto Tinv = linalg::inverse(F, T);
  require(Tinv.has_value(), ErrorKind::InvalidArgument, "change of basis is not invertible");
  FinDimGradedAlgebra B = FinDimGradedAlgebra::blank(F, d, A.modulus);
  for (std::size_t j = 0; j < d; ++j) {
    std::size_t i = 0;
    while (i < d && T(i, j) == 0) ++i;
    B.degrees[j] = A.degrees[i];
    B.labels[j] = label_of("f", j);
  }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      Vec w = linalg::apply(F, *Tinv, A.multiply(T.col(a), T.col(b)));
      for (std::size_t k = 0; k < d; ++k) B.c(a, b, k) = w[k];
    }
  B.unit = linalg::apply(F, *Tinv, A.unit);
  return B;
}

FinDimGradedAlgebra matrix_algebra(const Field& F, std::size_t m) {
  FinDimGradedAlgebra A = FinDimGradedAlgebra::blank(F, m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      A.labels[i * m + j] = "E" + std::to_string(i + 1) + std::to_string(j + 1);
      for (std::size_t l = 0; l < m; ++l) A.c(i * m + j, j * m + l, i * m + l) = 1;
    }
  A.unit.assign(m * m, Scalar(0));
  for (std::size_t i = 0; i < m; ++i) A.unit[i * m + i] = 1;
  return A;
}

FinDimGradedAlgebra upper_triangular(const Field& F, std::size_t m) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) cells.emplace_back(i, j);
  FinDimGradedAlgebra A = FinDimGradedAlgebra::blank(F, cells.size());
  auto index = [&](std::size_t i, std::size_t j) {
    return static_cast<std::size_t>(std::find(cells.begin(), cells.end(), std::make_pair(i, j)) - cells.begin());
  };
  A.unit.assign(cells.size(), Scalar(0));
  for (std::size_t a = 0; a < cells.size(); ++a) {
    auto [i, j] = cells[a];
    A.labels[a] = "E" + std::to_string(i + 1) + std::to_string(j + 1);
    if (i == j) A.unit[a] = 1;
    for (std::size_t l = j; l < m; ++l) A.c(a, index(j, l), index(i, l)) = 1;
  }
  return A;
}

FinDimGradedAlgebra polynomial_quotient(const Field& F, const std::vector<std::int64_t>& f, std::int64_t modulus,
                                        std::int64_t deg_x) {
  require(f.size() >= 2 && F.from_int(f.back()) == 1, ErrorKind::InvalidArgument,
          "relation must be monic of positive degree");
  const std::size_t D = f.size() - 1;
  FinDimGradedAlgebra A = FinDimGradedAlgebra::blank(F, D, modulus);
  for (std::size_t k = 0; k < D; ++k) {
    A.labels[k] = k == 0 ? "1" : (k == 1 ? "x" : "x^" + std::to_string(k));
    A.degrees[k] = mod_floor(static_cast<std::int64_t>(k) * deg_x, modulus);
  }
  // x^t reduced, for t < 2D - 1.
  std::vector<Vec> pw;
  Vec cur = A.basis(0);
  for (std::size_t t = 0; t + 1 < 2 * D; ++t) {
    pw.push_back(cur);
    Vec next = A.zero();
    for (std::size_t k = 0; k + 1 < D; ++k) next[k + 1] = cur[k];
    const Scalar top = cur[D - 1];
    for (std::size_t k = 0; k < D; ++k) next[k] = F.sub(next[k], F.mul(top, F.from_int(f[k])));
    cur = next;
  }
  for (std::size_t a = 0; a < D; ++a)
    for (std::size_t b = 0; b < D; ++b)
      for (std::size_t k = 0; k < D; ++k) A.c(a, b, k) = pw[a + b][k];
  return A;
}

FinDimGradedAlgebra nakayama(const Field& F, const std::vector<std::size_t>& lengths,
                             const std::vector<std::int64_t>& arrow_degrees, std::int64_t modulus) {
  const std::size_t m = lengths.size();
  require(m >= 1 && arrow_degrees.size() == m, ErrorKind::InvalidArgument, "one length and degree per vertex");
  for (std::size_t i = 0; i < m; ++i) {
    require(lengths[i] >= 1, ErrorKind::InvalidArgument, "Kupisch lengths are positive");
    require(lengths[(i + 1) % m] + 1 >= lengths[i], ErrorKind::InvalidArgument,
            "Kupisch series must satisfy c_{i+1} >= c_i - 1");
  }
  std::vector<std::pair<std::size_t, std::size_t>> paths;  // (start, length)
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t l = 0; l < lengths[i]; ++l) paths.emplace_back(i, l);
  FinDimGradedAlgebra A = FinDimGradedAlgebra::blank(F, paths.size(), modulus);
  A.unit.assign(paths.size(), Scalar(0));
  auto find = [&](std::size_t i, std::size_t l) -> std::optional<std::size_t> {
    auto it = std::find(paths.begin(), paths.end(), std::make_pair(i, l));
    if (it == paths.end()) return std::nullopt;
    return static_cast<std::size_t>(it - paths.begin());
  };
  for (std::size_t a = 0; a < paths.size(); ++a) {
    auto [i, l] = paths[a];
    A.labels[a] = l == 0 ? "e" + std::to_string(i) : "p" + std::to_string(i) + "_" + std::to_string(l);
    std::int64_t deg = 0;
    for (std::size_t t = 0; t < l; ++t) deg += arrow_degrees[(i + t) % m];
    A.degrees[a] = mod_floor(deg, modulus);
    if (l == 0) A.unit[a] = 1;
  }
  // p * q is "q then p": q = (j, k) must end where p = (i, l) starts.
  for (std::size_t a = 0; a < paths.size(); ++a)
    for (std::size_t b = 0; b < paths.size(); ++b) {
      auto [i, l] = paths[a];
      auto [j, k] = paths[b];
      if ((j + k) % m != i) continue;
      if (auto r = find(j, k + l)) A.c(a, b, *r) = 1;
    }
  return A;
}

FinDimGradedAlgebra random_nakayama(const Field& F, std::mt19937_64& rng, std::size_t max_dim,
                                    std::int64_t modulus) {
  for (;;) {
    const std::size_t m = 1 + rng() % std::min<std::size_t>(4, max_dim);
    std::vector<std::size_t> lengths(m);
    for (auto& c : lengths) c = 1 + rng() % std::max<std::size_t>(1, max_dim / m + 1);
    bool ok = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0}) <= max_dim;
    for (std::size_t i = 0; ok && i < m; ++i) ok = lengths[(i + 1) % m] + 1 >= lengths[i];
    if (!ok) continue;
    std::vector<std::int64_t> degs(m);
    for (auto& g : degs) g = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(modulus));
    return nakayama(F, lengths, degs, modulus);
  }
}

FinDimGradedAlgebra random_graded_algebra(const Field& F, std::mt19937_64& rng, std::size_t max_dim,
                                          std::int64_t modulus) {
  if (rng() % 2 == 0) return random_nakayama(F, rng, max_dim, modulus);
  const auto n = static_cast<std::size_t>(modulus);
  for (;;) {
    std::vector<std::int64_t> f{1};
    auto times = [&](const std::vector<std::int64_t>& g) {
      std::vector<std::int64_t> h(f.size() + g.size() - 1, 0);
      for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) h[i + j] += f[i] * g[j];
      const std::int64_t p = F.characteristic();
      if (p) for (auto& c : h) c = mod_floor(c, p);
      f = h;
    };
    for (std::size_t e = rng() % 3; e > 0; --e) times({0, 1});
    for (std::size_t t = 1 + rng() % 2; t > 0; --t) {
      const std::int64_t mu = static_cast<std::int64_t>(rng() % 4);
      std::int64_t lambda = 1;
      for (std::size_t k = 0; k < n; ++k) lambda *= mu;
      std::vector<std::int64_t> g(n + 1, 0);
      g[0] = -lambda;
      g[n] = 1;
      times(g);
    }
    if (f.size() >= 2 && f.size() - 1 <= max_dim) return polynomial_quotient(F, f, modulus, 1);
  }
}

std::vector<Vec> radical(const FinDimGradedAlgebra& A) {
  const Field& F = A.field;
  const std::size_t d = A.dim();
  if (d == 0) return {};
  std::vector<Scalar> tr(d, Scalar(0));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) tr[k] = F.add(tr[k], A.c(k, l, l));

  std::vector<Vec> I;
  for (std::size_t i = 0; i < d; ++i) I.push_back(A.basis(i));

  auto shrink = [&](const std::function<Scalar(const Vec&)>& g) {
    Matrix G(d, I.size());
    for (std::size_t a = 0; a < I.size(); ++a)
      for (std::size_t j = 0; j < d; ++j) G(j, a) = g(A.multiply(I[a], A.basis(j)));
    std::vector<Vec> next;
    for (const auto& c : linalg::nullspace(F, G)) {
      Vec v = A.zero();
      for (std::size_t a = 0; a < I.size(); ++a) v = vadd(F, v, vscale(F, c[a], I[a]));
      next.push_back(v);
    }
    I = linalg::span_basis(F, next);
  };

  // x in J iff Tr(L_{xy}) = 0 for all y (trace form), in characteristic 0.
  auto trace = [&](const Vec& z) {
    Scalar s = 0;
    for (std::size_t k = 0; k < d; ++k) s = F.add(s, F.mul(z[k], tr[k]));
    return s;
  };
  shrink(trace);

  if (!F.is_rational()) {
    // Characteristic p: refine with the p-power trace functionals.
    const std::int64_t p = F.characteristic();
    std::size_t level = 0;
    for (std::int64_t q = p; q <= static_cast<std::int64_t>(d); q *= p) ++level;
    for (std::size_t i = 1; i <= level && !I.empty(); ++i) {
      shrink([&](const Vec& z) {
        Matrix L = A.left_mult(z);
        std::vector<std::int64_t> X(d * d);
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < d; ++c) X[r * d + c] = to_int64(L(r, c));
        return F.from_int(power_trace(std::move(X), d, p, i));
      });
    }
  }

  // J must be a nilpotent two-sided ideal.
  Subspace J(F, d, I);
  for (const auto& v : I)
    for (std::size_t i = 0; i < d; ++i)
      require(J.contains(A.multiply(A.basis(i), v)) && J.contains(A.multiply(v, A.basis(i))),
              ErrorKind::Inconsistent, "computed radical is not an ideal");
  std::vector<Vec> power = I;
  for (std::size_t step = 0; step <= d && !power.empty(); ++step) {
    std::vector<Vec> next;
    for (const auto& a : power)
      for (const auto& b : I) next.push_back(A.multiply(a, b));
    power = linalg::span_basis(F, next);
  }
  require(power.empty(), ErrorKind::Inconsistent, "computed radical is not nilpotent");
  return I;
}

std::vector<std::size_t> algebra_generators(const FinDimGradedAlgebra& A) {
  const std::size_t d = A.dim();
  std::vector<std::size_t> gens;
  auto closure = [&] {
    Subspace S(A.field, d);
    std::vector<Vec> queue{A.unit};
    S.insert(A.unit);
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (auto g : gens) {
        Vec w = A.multiply(A.basis(g), queue[q]);
        if (S.insert(w)) queue.push_back(w);
      }
    return S;
  };
  Subspace S = closure();
  for (std::size_t i = 0; i < d && S.dim() < d; ++i)
    if (!S.contains(A.basis(i))) {
      gens.push_back(i);
      S = closure();
    }
  return gens;
}

Module regular_module(const FinDimGradedAlgebra& A) {
  Module M;
  M.dim = A.dim();
  for (std::size_t i = 0; i < A.dim(); ++i) M.action.push_back(A.left_mult(A.basis(i)));
  return M;
}

Module dual_regular(const FinDimGradedAlgebra& A) {
  Module M;
  M.dim = A.dim();
  for (std::size_t i = 0; i < A.dim(); ++i) M.action.push_back(A.left_mult(A.basis(i)).transpose());
  return M;
}

bool is_module(const FinDimGradedAlgebra& A, const Module& M) {
  const Field& F = A.field;
  if (M.action.size() != A.dim()) return false;
  if (act_of(F, M, A.unit) != Matrix::identity(M.dim)) return false;
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j)
      if (linalg::multiply(F, M.action[i], M.action[j]) != act_of(F, M, A.multiply(A.basis(i), A.basis(j))))
        return false;
  return true;
}

Decomposition decompose(const FinDimGradedAlgebra& A) {
  const Field& F = A.field;
  const std::size_t d = A.dim();
  Decomposition dec;
  dec.radical = radical(A);
  dec.generators = algebra_generators(A);

  // Semisimple quotient B = A / J on a complement of J spanned by basis vectors.
  Subspace span(F, d, dec.radical);
  std::vector<std::size_t> comp;
  for (std::size_t i = 0; i < d; ++i)
    if (span.insert(A.basis(i))) comp.push_back(i);
  const std::size_t r = comp.size();
  std::vector<Vec> cols;
  for (auto c : comp) cols.push_back(A.basis(c));
  for (const auto& v : dec.radical) cols.push_back(v);
  auto Q = linalg::inverse(F, Matrix::from_cols(cols, d));
  require(Q.has_value(), ErrorKind::Inconsistent, "complement of the radical is not a basis");
  auto project = [&](const Vec& v) {
    Vec full = linalg::apply(F, *Q, v);
    return Vec(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(r));
  };
  auto lift = [&](const Vec& b) {
    Vec v = A.zero();
    for (std::size_t a = 0; a < r; ++a) v[comp[a]] = b[a];
    return v;
  };
  FinDimGradedAlgebra B = FinDimGradedAlgebra::blank(F, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      Vec w = project(A.multiply(A.basis(comp[a]), A.basis(comp[b])));
      for (std::size_t k = 0; k < r; ++k) B.c(a, b, k) = w[k];
    }
  B.unit = project(A.unit);

  std::mt19937_64 rng(0x5eedULL);
  std::vector<Vec> prim;
  if (r) split_idempotent(B, B.unit, rng, prim);

  // Lift one at a time inside the complement of the previous lifts.
  Vec used = A.zero();
  for (const auto& e : prim) {
    const Vec u = vsub(F, A.unit, used);
    Vec x = A.multiply(A.multiply(u, lift(e)), u);
    for (std::size_t it = 0;; ++it) {
      require(it < 64, ErrorKind::Inconsistent, "idempotent lifting did not converge");
      const Vec x2 = A.multiply(x, x);
      if (x2 == x) break;
      const Vec x3 = A.multiply(x2, x);
      x = vsub(F, vscale(F, F.from_int(3), x2), vscale(F, F.from_int(2), x3));
    }
    dec.idempotents.push_back(x);
    used = vadd(F, used, x);
  }
  require(used == A.unit, ErrorKind::Inconsistent, "lifted idempotents do not sum to one");

  // Tops of A e and A f agree iff f B e != 0.
  const std::size_t k = prim.size();
  dec.simple_of.assign(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    if (dec.simple_of[a] != k) continue;
    dec.simple_of[a] = dec.class_rep.size();
    for (std::size_t b = a + 1; b < k; ++b) {
      if (dec.simple_of[b] != k) continue;
      bool linked = false;
      for (std::size_t t = 0; t < r && !linked; ++t)
        linked = !is_zero_vec(B.multiply(B.multiply(prim[b], B.basis(t)), prim[a]));
      if (linked) dec.simple_of[b] = dec.simple_of[a];
    }
    dec.class_rep.push_back(a);
  }

  Module regB;
  for (std::size_t i = 0; i < d; ++i) regB.action.push_back(B.left_mult(project(A.basis(i))));
  regB.dim = r;
  Module regA = regular_module(A);
  for (auto a : dec.class_rep) {
    std::vector<Vec> top, proj;
    for (std::size_t t = 0; t < r; ++t) top.push_back(B.multiply(B.basis(t), prim[a]));
    for (std::size_t t = 0; t < d; ++t) proj.push_back(A.multiply(A.basis(t), dec.idempotents[a]));
    Subspace S(F, r, top), P(F, d, proj);
    dec.simples.push_back(restrict_to(F, regB, S));
    dec.projectives.push_back(restrict_to(F, regA, P));
    dec.projective_basis.push_back(P.rows());
  }
  return dec;
}

ProjectiveCover projective_cover(const FinDimGradedAlgebra& A, const Decomposition& dec, const Module& M) {
  const Field& F = A.field;
  Subspace top(F, M.dim);
  for (const auto& j : dec.radical) {
    Matrix X = act_of(F, M, j);
    for (std::size_t c = 0; c < M.dim; ++c) top.insert(X.col(c));
  }
  std::vector<std::pair<std::size_t, Vec>> chosen;
  for (std::size_t s = 0; s < dec.class_rep.size(); ++s) {
    Matrix E = act_of(F, M, dec.idempotents[dec.class_rep[s]]);
    for (std::size_t c = 0; c < M.dim; ++c) {
      Vec v = E.col(c);
      if (top.insert(v)) chosen.emplace_back(s, v);
    }
  }

  ProjectiveCover pc;
  std::size_t total = 0;
  for (const auto& [s, v] : chosen) total += dec.projectives[s].dim;
  pc.cover.dim = total;
  pc.cover.action.assign(A.dim(), Matrix(total, total));
  pc.map = Matrix(M.dim, total);
  std::size_t off = 0;
  for (const auto& [s, v] : chosen) {
    pc.summands.push_back(s);
    const auto& P = dec.projectives[s];
    for (std::size_t i = 0; i < A.dim(); ++i)
      for (std::size_t r = 0; r < P.dim; ++r)
        for (std::size_t c = 0; c < P.dim; ++c) pc.cover.action[i](off + r, off + c) = P.action[i](r, c);
    for (std::size_t c = 0; c < P.dim; ++c) {
      Vec img = linalg::apply(F, act_of(F, M, dec.projective_basis[s][c]), v);
      for (std::size_t r = 0; r < M.dim; ++r) pc.map(r, off + c) = img[r];
    }
    off += P.dim;
  }
  require(linalg::rank(F, pc.map) == M.dim, ErrorKind::Inconsistent, "projective cover is not surjective");
  return pc;
}

Module syzygy(const FinDimGradedAlgebra& A, const Decomposition& dec, const Module& M) {
  if (M.dim == 0) return M;
  ProjectiveCover pc = projective_cover(A, dec, M);
  Subspace K(A.field, pc.cover.dim, linalg::nullspace(A.field, pc.map));
  return restrict_to(A.field, pc.cover, K);
}

std::optional<Matrix> module_isomorphism(const FinDimGradedAlgebra& A, const Decomposition& dec, const Module& M,
                                         const Module& N) {
  const Field& F = A.field;
  if (M.dim != N.dim) return std::nullopt;
  const std::size_t m = M.dim;
  if (m == 0) return Matrix(0, 0);
  for (auto a : dec.class_rep)
    if (linalg::rank(F, act_of(F, M, dec.idempotents[a])) != linalg::rank(F, act_of(F, N, dec.idempotents[a])))
      return std::nullopt;

  // X M_g = N_g X on generators; unknown X(r, c) at r * m + c.
  std::vector<std::size_t> gens = dec.generators;
  Matrix sys(gens.size() * m * m, m * m);
  std::size_t row = 0;
  for (auto g : gens) {
    const Matrix& Mg = M.action[g];
    const Matrix& Ng = N.action[g];
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c, ++row) {
        for (std::size_t t = 0; t < m; ++t) {
          sys(row, r * m + t) = F.add(sys(row, r * m + t), Mg(t, c));
          sys(row, t * m + c) = F.sub(sys(row, t * m + c), Ng(r, t));
        }
      }
  }
  auto hom = linalg::nullspace(F, sys);
  if (hom.empty()) return std::nullopt;
  auto as_matrix = [&](const Vec& x) {
    Matrix X(m, m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) X(r, c) = x[r * m + c];
    return X;
  };
  std::mt19937_64 rng(0x150ULL + m);
  for (std::size_t trial = 0; trial < hom.size() + 64; ++trial) {
    Vec x;
    if (trial < hom.size()) {
      x = hom[trial];
    } else {
      x = Vec(m * m, Scalar(0));
      for (const auto& h : hom) x = vadd(F, x, vscale(F, random_scalar(F, rng), h));
    }
    Matrix X = as_matrix(x);
    if (linalg::rank(F, X) == m) return X;
  }
  return std::nullopt;
}

std::string HomDim::str() const {
  switch (kind) {
    case Kind::Finite: return std::to_string(value);
    case Kind::Infinite: return "infinite";
    case Kind::AtLeast: return ">= " + std::to_string(value);
  }
  return "";
}

std::optional<bool> known_le(const HomDim& a, const HomDim& b) {
  using K = HomDim::Kind;
  if (b.kind == K::Infinite) return true;
  if (a.kind == K::Infinite) return b.kind == K::Finite ? std::optional<bool>(false) : std::nullopt;
  if (a.kind == K::Finite && b.kind == K::Finite) return a.value <= b.value;
  if (a.kind == K::Finite) return a.value <= b.value ? std::optional<bool>(true) : std::nullopt;
  if (b.kind == K::Finite) return b.value < a.value ? std::optional<bool>(false) : std::nullopt;
  return std::nullopt;
}

std::optional<bool> known_eq(const HomDim& a, const HomDim& b) {
  using K = HomDim::Kind;
  if (a.kind == K::AtLeast || b.kind == K::AtLeast) {
    const HomDim& x = a.kind == K::AtLeast ? a : b;
    const HomDim& y = a.kind == K::AtLeast ? b : a;
    if (y.kind == K::Finite && y.value < x.value) return false;
    return std::nullopt;
  }
  if (a.kind != b.kind) return false;
  return a.kind == K::Infinite || a.value == b.value;
}

HomDim projective_dimension(const FinDimGradedAlgebra& A, const Decomposition& dec, const Module& M,
                            std::int64_t cutoff) {
  require(M.dim > 0, ErrorKind::InvalidArgument, "projective dimension of the zero module");
  std::vector<Module> syz{M};
  for (std::int64_t i = 0; i < cutoff; ++i) {
    Module next = syzygy(A, dec, syz.back());
    if (next.dim == 0) return HomDim::finite(i);
    for (std::size_t t = 0; t < syz.size(); ++t)
      if (auto X = module_isomorphism(A, dec, syz[t], next)) {
        Periodicity cert{t, syz.size(), syz[t], next, *X};
        return {HomDim::Kind::Infinite, 0, std::move(cert)};
      }
    syz.push_back(std::move(next));
  }
  return {HomDim::Kind::AtLeast, cutoff, std::nullopt};
}

namespace {

HomDim combine(const std::vector<HomDim>& parts) {
  HomDim out = HomDim::finite(0);
  for (const auto& h : parts)
    if (h.is_infinite()) return h;
  for (const auto& h : parts) {
    if (h.kind == HomDim::Kind::AtLeast) out = h;
    if (out.is_finite() && h.is_finite()) out.value = std::max(out.value, h.value);
  }
  return out;
}

}  // namespace

HomDim gl_dim(const FinDimGradedAlgebra& A, std::int64_t cutoff) {
  const Decomposition dec = decompose(A);
  std::vector<HomDim> parts(dec.simples.size());
  parallel_for(parts.size(), [&](std::size_t s) { parts[s] = projective_dimension(A, dec, dec.simples[s], cutoff); });
  return combine(parts);
}

HomDim inj_dim_self(const FinDimGradedAlgebra& A, std::int64_t cutoff) {
  const FinDimGradedAlgebra op = opposite(A);
  const Decomposition dec = decompose(op);
  return projective_dimension(op, dec, dual_regular(A), cutoff);
}

bool TransferReport::holds() const {
  const bool le = gl_le == true && inj_le == true;
  if (char_divides) return le;
  return le && gl_eq == true && inj_eq == true;
}

TransferReport verify_homological_transfer(const FinDimGradedAlgebra& A, std::int64_t cutoff) {
  const FinDimGradedAlgebra S = smash_product(A).algebra;
  TransferReport rep;
  rep.gl_A = gl_dim(A, cutoff);
  rep.gl_smash = gl_dim(S, cutoff);
  rep.inj_A = inj_dim_self(A, cutoff);
  rep.inj_smash = inj_dim_self(S, cutoff);
  rep.char_divides = !A.field.invertible(A.modulus);
  rep.gl_le = known_le(rep.gl_smash, rep.gl_A);
  rep.inj_le = known_le(rep.inj_smash, rep.inj_A);
  rep.gl_eq = known_eq(rep.gl_smash, rep.gl_A);
  rep.inj_eq = known_eq(rep.inj_smash, rep.inj_A);
  const std::string n = std::to_string(A.modulus);
  if (rep.gl_le == true && rep.gl_eq == false)
    rep.strict.push_back("gl.dim A#Z_" + n + " = " + rep.gl_smash.str() + " < " + rep.gl_A.str() + " = gl.dim A");
  if (rep.inj_le == true && rep.inj_eq == false)
    rep.strict.push_back("inj.dim A#Z_" + n + " = " + rep.inj_smash.str() + " < " + rep.inj_A.str() +
                         " = inj.dim A");
  return rep;
}

}  // namespace cancov
