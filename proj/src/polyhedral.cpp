#include "cancov/polyhedral.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "cancov/field.hpp"

namespace cancov::polyhedral {

namespace {

using BigVec = std::vector<Integer>;

Integer big_dot(const Point& a, const BigVec& x) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Integer(static_cast<long>(a[i])) * x[i];
  return s;
}

std::size_t rank_of_rows(const std::vector<Point>& rows, const std::vector<std::size_t>& idx, std::size_t dim) {
  if (idx.empty()) return 0;
  Matrix m(idx.size(), dim);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t j = 0; j < dim; ++j) m(r, j) = static_cast<long>(rows[idx[r]][j]);
  return linalg::rank(Field::rationals(), m);
}

Point to_point(const BigVec& v) {
  Point p(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) p[i] = to_int64(v[i]);
  return p;
}

// Normalize so that the first nonzero coefficient has absolute value 1.
Inequality normalized(Inequality q) {
  for (const auto& c : q.a)
    if (c != 0) {
      Rational s = abs(c);
      for (auto& x : q.a) x /= s;
      q.b /= s;
      break;
    }
  return q;
}

struct VecLess {
  bool operator()(const std::vector<Rational>& x, const std::vector<Rational>& y) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      int c = cmp(x[i], y[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

// Keep only the strongest right-hand side per normalized left-hand side.
std::vector<Inequality> dedupe(const std::vector<Inequality>& sys) {
  std::map<std::vector<Rational>, Rational, VecLess> best;
  for (const auto& raw : sys) {
    Inequality q = normalized(raw);
    auto it = best.find(q.a);
    if (it == best.end() || q.b > it->second) best[q.a] = q.b;
  }
  std::vector<Inequality> out;
  out.reserve(best.size());
  for (auto& [a, b] : best) out.push_back({a, b});
  return out;
}

bool all_zero(const std::vector<Rational>& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; });
}

// stages[k] is the projection of the system onto variables 0..k; the last
// entry is the input system. Returns false when the projection onto zero
// variables is already contradictory.
bool project_all(const std::vector<Inequality>& system, std::size_t dim, std::vector<std::vector<Inequality>>& stages) {
  stages.assign(dim, {});
  std::vector<Inequality> cur = dedupe(system);
  for (std::size_t k = dim; k-- > 0;) {
    stages[k] = cur;
    std::vector<Inequality> pos, neg, next;
    for (const auto& q : cur) {
      if (q.a[k] > 0)
        pos.push_back(q);
      else if (q.a[k] < 0)
        neg.push_back(q);
      else
        next.push_back(q);
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        Inequality c{std::vector<Rational>(dim), 0};
        const Rational fp = -n.a[k], fn = p.a[k];
        for (std::size_t j = 0; j < dim; ++j) c.a[j] = fp * p.a[j] + fn * n.a[j];
        c.a[k] = 0;
        c.b = fp * p.b + fn * n.b;
        next.push_back(std::move(c));
      }
    cur = dedupe(next);
  }
  for (const auto& q : cur)
    if (all_zero(q.a) && q.b > 0) return false;
  return true;
}

struct Interval {
  std::optional<Rational> lo, hi;
  bool empty() const { return lo && hi && *lo > *hi; }
};

Interval bounds_for(const std::vector<Inequality>& stage, std::size_t k, const std::vector<Rational>& fixed) {
  Interval iv;
  for (const auto& q : stage) {
    Rational rhs = q.b;
    for (std::size_t j = 0; j < k; ++j) rhs -= q.a[j] * fixed[j];
    const Rational& c = q.a[k];
    if (c == 0) {
      if (rhs > 0) return Interval{Rational(1), Rational(0)};
      continue;
    }
    Rational v = rhs / c;
    if (c > 0) {
      if (!iv.lo || v > *iv.lo) iv.lo = v;
    } else {
      if (!iv.hi || v < *iv.hi) iv.hi = v;
    }
  }
  return iv;
}

Integer ceil_q(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

struct Search {
  const std::vector<std::vector<Inequality>>& stages;
  std::size_t dim;
  std::int64_t radius;
  bool clipped = false;
  std::size_t nodes = 0;
  static constexpr std::size_t kNodeBudget = 2'000'000;

  bool run(std::size_t k, std::vector<Rational>& fixed, Point& out) {
    if (k == dim) return true;
    if (++nodes > kNodeBudget) {
      clipped = true;
      return false;
    }
    Interval iv = bounds_for(stages[k], k, fixed);
    if (iv.empty()) return false;
    std::int64_t lo = -radius, hi = radius;
    if (iv.lo) {
      Integer c = ceil_q(*iv.lo);
      if (c > hi) {
        clipped = true;
        return false;
      }
      if (c > lo) lo = to_int64(c);
    }
    if (!iv.lo || ceil_q(*iv.lo) < -radius) clipped = true;
    if (iv.hi) {
      Integer f = floor_q(*iv.hi);
      if (f < lo) {
        if (f < -radius) clipped = true;
        return false;
      }
      if (f < hi) hi = to_int64(f);
    }
    if (!iv.hi || floor_q(*iv.hi) > radius) clipped = true;
    if (lo > hi) return false;
    // Values closest to zero first.
    std::vector<std::int64_t> order;
    for (std::int64_t v = lo; v <= hi; ++v) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [](std::int64_t a, std::int64_t b) {
      if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
      return a > b;
    });
    for (std::int64_t v : order) {
      fixed[k] = static_cast<long>(v);
      out[k] = v;
      if (run(k + 1, fixed, out)) return true;
    }
    return false;
  }
};

}  // namespace

bool canonical_less(const Point& a, const Point& b) {
  auto nnz = [](const Point& p) { return std::count_if(p.begin(), p.end(), [](auto x) { return x != 0; }); };
  auto first = [](const Point& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] != 0) return i;
    return p.size();
  };
  if (nnz(a) != nnz(b)) return nnz(a) < nnz(b);
  if (first(a) != first(b)) return first(a) < first(b);
  return a > b;
}

std::size_t rank(const std::vector<Point>& vectors, std::size_t dim) {
  std::vector<std::size_t> idx(vectors.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return rank_of_rows(vectors, idx, dim);
}

std::vector<Point> extreme_rays(const std::vector<Point>& rows, std::size_t dim) {
  if (dim == 0) return {};
  // Greedy choice of dim independent rows seeds a simplicial cone.
  std::vector<std::size_t> basis;
  for (std::size_t i = 0; i < rows.size() && basis.size() < dim; ++i) {
    basis.push_back(i);
    if (rank_of_rows(rows, basis, dim) < basis.size()) basis.pop_back();
  }
  require(basis.size() == dim, ErrorKind::NotPointed, "inequalities do not span; the cone contains a line");

  Matrix M(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t j = 0; j < dim; ++j) M(r, j) = static_cast<long>(rows[basis[r]][j]);
  auto Minv = linalg::inverse(Field::rationals(), M);
  std::vector<BigVec> gens;
  for (std::size_t j = 0; j < dim; ++j) {
    Integer den = 1;
    for (std::size_t i = 0; i < dim; ++i) den = lcm(den, Integer((*Minv)(i, j).get_den()));
    BigVec g(dim);
    for (std::size_t i = 0; i < dim; ++i) g[i] = Integer((*Minv)(i, j) * den);
    gens.push_back(primitive(g));
  }

  std::vector<std::size_t> processed = basis;
  std::vector<bool> used(rows.size(), false);
  for (auto b : basis) used[b] = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (used[i]) continue;
    const Point& a = rows[i];
    std::vector<Integer> val(gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g) val[g] = big_dot(a, gens[g]);
    std::vector<BigVec> next;
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (val[g] >= 0) next.push_back(gens[g]);
    for (std::size_t p = 0; p < gens.size(); ++p) {
      if (val[p] <= 0) continue;
      for (std::size_t n = 0; n < gens.size(); ++n) {
        if (val[n] >= 0) continue;
        std::vector<std::size_t> tight;
        for (auto r : processed)
          if (big_dot(rows[r], gens[p]) == 0 && big_dot(rows[r], gens[n]) == 0) tight.push_back(r);
        if (dim >= 2 && rank_of_rows(rows, tight, dim) != dim - 2) continue;
        BigVec c(dim);
        for (std::size_t j = 0; j < dim; ++j) c[j] = val[p] * gens[n][j] - val[n] * gens[p][j];
        next.push_back(primitive(c));
      }
    }
    gens = std::move(next);
    processed.push_back(i);
    used[i] = true;
  }

  std::vector<Point> out;
  for (const auto& g : gens) {
    Point p = to_point(g);
    if (!is_zero(p) && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::optional<std::vector<Rational>> feasible_point(const std::vector<Inequality>& system, std::size_t dim) {
  if (dim == 0) {
    for (const auto& q : system)
      if (q.b > 0) return std::nullopt;
    return std::vector<Rational>{};
  }
  std::vector<std::vector<Inequality>> stages;
  if (!project_all(system, dim, stages)) return std::nullopt;
  std::vector<Rational> x(dim, Rational(0));
  for (std::size_t k = 0; k < dim; ++k) {
    Interval iv = bounds_for(stages[k], k, x);
    if (iv.empty()) return std::nullopt;
    if (iv.lo && *iv.lo > 0)
      x[k] = *iv.lo;
    else if (iv.hi && *iv.hi < 0)
      x[k] = *iv.hi;
    else
      x[k] = 0;
  }
  return x;
}

IntegerSearch integer_point_in_box(const std::vector<Inequality>& system, std::size_t dim, std::int64_t radius) {
  IntegerSearch result;
  if (dim == 0) {
    bool ok = std::all_of(system.begin(), system.end(), [](const Inequality& q) { return q.b <= 0; });
    if (ok) result.point = Point{};
    result.exhaustive = true;
    return result;
  }
  std::vector<std::vector<Inequality>> stages;
  if (!project_all(system, dim, stages)) {
    result.exhaustive = true;
    return result;
  }
  Search s{stages, dim, radius};
  std::vector<Rational> fixed(dim, Rational(0));
  Point out(dim, 0);
  if (s.run(0, fixed, out)) result.point = out;
  result.exhaustive = !s.clipped;
  return result;
}

std::optional<Point> integer_point(const std::vector<Inequality>& system, std::size_t dim, std::int64_t max_radius) {
  for (std::int64_t r = 1;; r *= 2) {
    if (r > max_radius) r = max_radius;
    IntegerSearch s = integer_point_in_box(system, dim, r);
    if (s.point) return s.point;
    if (s.exhaustive) return std::nullopt;
    if (r == max_radius) fail(ErrorKind::BudgetExceeded, "integer feasibility unresolved within the box cap");
  }
}

std::vector<std::vector<Rational>> vertices(const std::vector<Inequality>& system, std::size_t dim) {
  const Field Q = Field::rationals();
  std::vector<std::vector<Rational>> out;
  const std::size_t m = system.size();
  if (m < dim) return out;
  std::vector<std::size_t> pick(dim);
  for (std::size_t i = 0; i < dim; ++i) pick[i] = i;
  for (;;) {
    Matrix A(dim, dim);
    Vec b(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t j = 0; j < dim; ++j) A(r, j) = system[pick[r]].a[j];
      b[r] = system[pick[r]].b;
    }
    if (linalg::rank(Q, A) == dim) {
      auto x = linalg::solve(Q, A, b);
      bool ok = std::all_of(system.begin(), system.end(), [&](const Inequality& q) {
        Rational s = 0;
        for (std::size_t j = 0; j < dim; ++j) s += q.a[j] * (*x)[j];
        return s >= q.b;
      });
      if (ok && std::find(out.begin(), out.end(), *x) == out.end()) out.push_back(*x);
    }
    // next combination
    std::size_t i = dim;
    while (i > 0 && pick[i - 1] == m - dim + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < dim; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

}  // namespace cancov::polyhedral
