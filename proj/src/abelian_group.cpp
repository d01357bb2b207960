#include "cancov/abelian_group.hpp"

#include <sstream>

namespace cancov {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, ErrorKind::InvalidArgument, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_points(const std::vector<Point>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, ErrorKind::InvalidArgument, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rows[i][j]);
  }
  return m;
}

std::vector<Integer> IntMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<Integer> IntMatrix::col(std::size_t j) const {
  std::vector<Integer> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& x) const {
  require(x.size() == cols_, ErrorKind::InvalidArgument, "dimension mismatch in apply");
  std::vector<Integer> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  require(cols_ == o.rows_, ErrorKind::InvalidArgument, "dimension mismatch in product");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

Integer IntMatrix::determinant() const {
  require(rows_ == cols_, ErrorKind::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix m = *this;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

// Smallest nonzero |entry| in the block [t.., t..]; lexicographic tie-break.
bool find_pivot(const IntMatrix& D, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < D.rows(); ++i)
    for (std::size_t j = t; j < D.cols(); ++j) {
      if (D(i, j) == 0) continue;
      Integer a = abs(D(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  SmithForm s{IntMatrix::identity(m), A, IntMatrix::identity(n), 0};
  IntMatrix& D = s.D;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t pi = 0, pj = 0;
    if (!find_pivot(D, t, pi, pj)) break;
    for (;;) {
      D.swap_rows(t, pi);
      s.U.swap_rows(t, pi);
      D.swap_cols(t, pj);
      s.V.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        D.add_row(i, t, -q);
        s.U.add_row(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        D.add_col(j, t, -q);
        s.V.add_col(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) {
        find_pivot(D, t, pi, pj);
        continue;
      }
      // Row and column t are clear; enforce divisibility of the trailing block.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            D.add_row(t, i, 1);
            s.U.add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (!divisible) {
        find_pivot(D, t, pi, pj);
        continue;
      }
      break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      s.U.negate_row(t);
    }
    s.rank = t + 1;
  }
  return s;
}

IntMatrix unimodular_inverse(const IntMatrix& U) {
  const std::size_t n = U.rows();
  require(U.cols() == n, ErrorKind::InvalidArgument, "inverse of non-square matrix");
  // Gauss-Jordan over Q; the result is integral exactly when U is unimodular.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = U(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    require(p < n, ErrorKind::InvalidArgument, "matrix is singular");
    std::swap(a[p], a[c]);
    Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      require(a[i][n + j].get_den() == 1, ErrorKind::InvalidArgument, "matrix is not unimodular");
      inv(i, j) = a[i][n + j].get_num();
    }
  return inv;
}

FgAbelianGroup cokernel(const IntMatrix& A) {
  const std::size_t m = A.rows();
  SmithForm s = smith_normal_form(A);
  IntMatrix Uinv = unimodular_inverse(s.U);

  std::vector<std::size_t> torsion_rows, free_rows;
  std::vector<Integer> factors;
  for (std::size_t i = 0; i < m; ++i) {
    if (i < s.rank) {
      if (s.D(i, i) != 1) {
        torsion_rows.push_back(i);
        factors.push_back(s.D(i, i));
      }
    } else {
      free_rows.push_back(i);
    }
  }

  FgAbelianGroup G;
  G.free_rank_ = free_rows.size();
  G.invariant_factors_ = factors;
  const std::size_t k = torsion_rows.size() + free_rows.size();
  G.basis_change_ = IntMatrix(k, m);
  G.lift_matrix_ = IntMatrix(m, k);

  auto first_nonzero = [](const std::vector<Integer>& v) -> Integer {
    for (const auto& x : v)
      if (x != 0) return x;
    return 0;
  };

  for (std::size_t r = 0; r < k; ++r) {
    const bool torsion = r < torsion_rows.size();
    const std::size_t src = torsion ? torsion_rows[r] : free_rows[r - torsion_rows.size()];
    std::vector<Integer> row = s.U.row(src);
    std::vector<Integer> col = Uinv.col(src);
    bool flip = false;
    if (torsion) {
      const Integer& d = factors[r];
      for (auto& x : row) x = ((x % d) + d) % d;
      Integer lead = first_nonzero(row);
      flip = lead != 0 && d - lead < lead;
      if (flip)
        for (auto& x : row) x = (d - x) % d;
    } else {
      flip = first_nonzero(row) < 0;
      if (flip)
        for (auto& x : row) x = -x;
    }
    if (flip)
      for (auto& x : col) x = -x;
    for (std::size_t j = 0; j < m; ++j) G.basis_change_(r, j) = row[j];
    for (std::size_t i = 0; i < m; ++i) G.lift_matrix_(i, r) = col[i];
  }
  return G;
}

GroupElement FgAbelianGroup::reduce(std::vector<Integer> c) const {
  for (std::size_t i = 0; i < invariant_factors_.size(); ++i) {
    const Integer& d = invariant_factors_[i];
    c[i] = ((c[i] % d) + d) % d;
  }
  return GroupElement{std::move(c)};
}

GroupElement FgAbelianGroup::zero() const { return GroupElement{std::vector<Integer>(num_coords())}; }

GroupElement FgAbelianGroup::project(const std::vector<Integer>& ambient) const {
  return reduce(basis_change_.apply(ambient));
}

GroupElement FgAbelianGroup::project(const Point& ambient) const {
  std::vector<Integer> v;
  v.reserve(ambient.size());
  for (auto x : ambient) v.emplace_back(static_cast<long>(x));
  return project(v);
}

std::vector<Integer> FgAbelianGroup::lift(const GroupElement& g) const { return lift_matrix_.apply(g.coords); }

GroupElement FgAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  std::vector<Integer> c(num_coords());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords[i] + b.coords[i];
  return reduce(std::move(c));
}

GroupElement FgAbelianGroup::negate(const GroupElement& a) const {
  std::vector<Integer> c(num_coords());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.coords[i];
  return reduce(std::move(c));
}

GroupElement FgAbelianGroup::scale(const Integer& s, const GroupElement& a) const {
  std::vector<Integer> c(num_coords());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * a.coords[i];
  return reduce(std::move(c));
}

bool FgAbelianGroup::is_zero(const GroupElement& a) const {
  for (const auto& x : a.coords)
    if (x != 0) return false;
  return true;
}

std::optional<Integer> FgAbelianGroup::order(const GroupElement& a) const {
  const std::size_t k = invariant_factors_.size();
  for (std::size_t i = k; i < a.coords.size(); ++i)
    if (a.coords[i] != 0) return std::nullopt;
  Integer ord = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const Integer& d = invariant_factors_[i];
    Integer o = d / gcd(a.coords[i], d);
    ord = lcm(ord, o);
  }
  return ord;
}

std::optional<Integer> element_order(const GroupElement& g, const FgAbelianGroup& G) { return G.order(g); }

std::string FgAbelianGroup::describe() const {
  std::vector<std::string> parts;
  if (free_rank_ == 1) parts.push_back("Z");
  if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
  for (const auto& d : invariant_factors_) parts.push_back("Z_" + d.get_str());
  if (parts.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " x " : "") + parts[i];
  return out;
}

std::string FgAbelianGroup::format(const GroupElement& a) const {
  if (a.coords.size() == 1) return a.coords[0].get_str();
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.coords.size(); ++i) os << (i ? "," : "") << a.coords[i].get_str();
  os << ')';
  return os.str();
}

}  // namespace cancov
