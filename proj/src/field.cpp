#include "cancov/field.hpp"

#include <utility>

namespace cancov {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = mod_floor(a, p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) fail(ErrorKind::NoInverse, "element is not invertible mod " + std::to_string(p));
  return mod_floor(t, p);
}

// Modular images used by the prime-field fast path.
using ModMat = std::vector<std::int64_t>;

std::int64_t residue(const Scalar& x, std::int64_t p) {
  Integer pz = static_cast<long>(p);
  Integer n = x.get_num() % pz;
  std::int64_t r = mod_floor(to_int64(n), p);
  if (x.get_den() == 1) return r;
  Integer d = x.get_den() % pz;
  if (d == 0) fail(ErrorKind::NoInverse, "denominator divisible by the characteristic");
  return r * mod_inverse(to_int64(d), p) % p;
}

ModMat to_mod(const Matrix& A, std::int64_t p) {
  ModMat m(A.data().size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = residue(A.data()[i], p);
  return m;
}

Matrix from_mod(const ModMat& m, std::size_t rows, std::size_t cols) {
  Matrix A(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) A.data()[i] = Scalar(static_cast<long>(m[i]));
  return A;
}

linalg::RowEchelon rref_mod(const Matrix& A, std::int64_t p) {
  const std::size_t R = A.rows(), C = A.cols();
  ModMat m = to_mod(A, p);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = r;
    while (piv < R && m[piv * C + c] == 0) ++piv;
    if (piv == R) continue;
    if (piv != r)
      for (std::size_t j = 0; j < C; ++j) std::swap(m[piv * C + j], m[r * C + j]);
    const std::int64_t inv = mod_inverse(m[r * C + c], p);
    for (std::size_t j = c; j < C; ++j) m[r * C + j] = m[r * C + j] * inv % p;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r) continue;
      const std::int64_t f = m[i * C + c];
      if (f == 0) continue;
      for (std::size_t j = c; j < C; ++j) {
        m[i * C + j] = (m[i * C + j] - f * m[r * C + j]) % p;
        if (m[i * C + j] < 0) m[i * C + j] += p;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {from_mod(m, R, C), pivots};
}

linalg::RowEchelon rref_rational(Matrix m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = r;
    while (piv < R && m(piv, c) == 0) ++piv;
    if (piv == R) continue;
    if (piv != r)
      for (std::size_t j = 0; j < C; ++j) std::swap(m(piv, j), m(r, j));
    const Scalar inv = 1 / m(r, c);
    for (std::size_t j = c; j < C; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Scalar f = m(i, c);
      for (std::size_t j = c; j < C; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), pivots};
}

}  // namespace

Field Field::prime(std::int64_t p) {
  require(p > 1 && p < (std::int64_t{1} << 31) && is_prime(p), ErrorKind::InvalidArgument,
          "field characteristic must be 0 or a prime below 2^31, got " + std::to_string(p));
  return Field(p);
}

Scalar Field::normalize(const Scalar& x) const {
  if (p_ == 0) return x;
  return Scalar(static_cast<long>(residue(x, p_)));
}

Scalar Field::inv(const Scalar& a) const {
  if (a == 0) fail(ErrorKind::NoInverse, "inverse of zero");
  if (p_ == 0) return 1 / a;
  return Scalar(static_cast<long>(mod_inverse(to_int64(a), p_)));
}

Scalar Field::pow(Scalar a, std::uint64_t e) const {
  Scalar r = from_int(1);
  a = normalize(a);
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F_" + std::to_string(p_); }

std::string Field::format(const Scalar& a) const { return normalize(a).get_str(); }

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, ErrorKind::InvalidArgument, "ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_cols(const std::vector<Vec>& cols, std::size_t rows) {
  if (!cols.empty()) rows = cols.front().size();
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require(cols[j].size() == rows, ErrorKind::InvalidArgument, "ragged columns");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Vec Matrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

Vec Matrix::col(std::size_t j) const {
  Vec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

namespace linalg {

Matrix multiply(const Field& F, const Matrix& A, const Matrix& B) {
  require(A.cols() == B.rows(), ErrorKind::InvalidArgument, "dimension mismatch in product");
  const std::size_t R = A.rows(), K = A.cols(), C = B.cols();
  if (!F.is_rational()) {
    const std::int64_t p = F.characteristic();
    ModMat a = to_mod(A, p), b = to_mod(B, p), r(R * C, 0);
    for (std::size_t i = 0; i < R; ++i)
      for (std::size_t k = 0; k < K; ++k) {
        const std::int64_t x = a[i * K + k];
        if (x == 0) continue;
        for (std::size_t j = 0; j < C; ++j) r[i * C + j] = (r[i * C + j] + x * b[k * C + j]) % p;
      }
    return from_mod(r, R, C);
  }
  Matrix r(R, C);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t k = 0; k < K; ++k) {
      const Scalar& x = A(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < C; ++j) r(i, j) += x * B(k, j);
    }
  return r;
}

Vec apply(const Field& F, const Matrix& A, const Vec& x) {
  require(A.cols() == x.size(), ErrorKind::InvalidArgument, "dimension mismatch in apply");
  Vec y(A.rows(), Scalar(0));
  for (std::size_t i = 0; i < A.rows(); ++i) {
    Scalar s = 0;
    for (std::size_t j = 0; j < A.cols(); ++j)
      if (A(i, j) != 0 && x[j] != 0) s += A(i, j) * x[j];
    y[i] = F.normalize(s);
  }
  return y;
}

Matrix add(const Field& F, const Matrix& A, const Matrix& B) {
  require(A.rows() == B.rows() && A.cols() == B.cols(), ErrorKind::InvalidArgument, "dimension mismatch in sum");
  Matrix r(A.rows(), A.cols());
  for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] = F.add(A.data()[i], B.data()[i]);
  return r;
}

Matrix scale(const Field& F, const Scalar& s, const Matrix& A) {
  Matrix r(A.rows(), A.cols());
  for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] = F.mul(s, A.data()[i]);
  return r;
}

RowEchelon rref(const Field& F, const Matrix& A) {
  if (F.is_rational()) return rref_rational(A);
  return rref_mod(A, F.characteristic());
}

std::size_t rank(const Field& F, const Matrix& A) { return rref(F, A).pivots.size(); }

std::vector<Vec> nullspace(const Field& F, const Matrix& A) {
  const std::size_t C = A.cols();
  RowEchelon e = rref(F, A);
  std::vector<bool> is_pivot(C, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < C; ++free) {
    if (is_pivot[free]) continue;
    Vec v(C, Scalar(0));
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = F.neg(e.reduced(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Field& F, const Matrix& A, const Vec& b) {
  const std::size_t R = A.rows(), C = A.cols();
  require(b.size() == R, ErrorKind::InvalidArgument, "dimension mismatch in solve");
  Matrix aug(R, C + 1);
  for (std::size_t i = 0; i < R; ++i) {
    for (std::size_t j = 0; j < C; ++j) aug(i, j) = A(i, j);
    aug(i, C) = F.normalize(b[i]);
  }
  RowEchelon e = rref(F, aug);
  if (!e.pivots.empty() && e.pivots.back() == C) return std::nullopt;
  Vec x(C, Scalar(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, C);
  return x;
}

std::optional<Matrix> inverse(const Field& F, const Matrix& A) {
  const std::size_t n = A.rows();
  require(A.cols() == n, ErrorKind::InvalidArgument, "inverse of non-square matrix");
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
    aug(i, n + i) = 1;
  }
  RowEchelon e = rref(F, aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

Scalar determinant(const Field& F, const Matrix& A) {
  const std::size_t n = A.rows();
  require(A.cols() == n, ErrorKind::InvalidArgument, "determinant of non-square matrix");
  Matrix m = A;
  Scalar det = F.from_int(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return Scalar(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = F.neg(det);
    }
    det = F.mul(det, m(c, c));
    const Scalar inv = F.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Scalar f = F.mul(m(i, c), inv);
      for (std::size_t j = c; j < n; ++j) m(i, j) = F.sub(m(i, j), F.mul(f, m(c, j)));
    }
  }
  return det;
}

std::vector<std::size_t> independent_subset(const Field& F, const std::vector<Vec>& vectors) {
  if (vectors.empty()) return {};
  // Columns are the vectors; pivot columns of the rref are a greedy basis.
  Matrix m = Matrix::from_cols(vectors);
  return rref(F, m).pivots;
}

std::vector<Vec> span_basis(const Field& F, const std::vector<Vec>& vectors) {
  if (vectors.empty()) return {};
  RowEchelon e = rref(F, Matrix::from_rows(vectors));
  std::vector<Vec> out;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) out.push_back(e.reduced.row(r));
  return out;
}

std::optional<Vec> coordinates(const Field& F, const std::vector<Vec>& basis, const Vec& v) {
  if (basis.empty()) {
    for (const auto& x : v)
      if (x != 0) return std::nullopt;
    return Vec{};
  }
  return solve(F, Matrix::from_cols(basis), v);
}

}  // namespace linalg

}  // namespace cancov
