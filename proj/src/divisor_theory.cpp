#include "cancov/divisor_theory.hpp"

#include <algorithm>
#include <functional>

namespace cancov {

namespace {

void same_monoid(const ModuleClass& M, const ModuleClass& N) {
  require(M.monoid.same_as(N.monoid), ErrorKind::MonoidMismatch, "module classes live over different monoids");
}

const FgAbelianGroup& group_of(const AffineMonoid& A) { return A.class_group().group; }

}  // namespace

ModuleClass ModuleClass::free(const AffineMonoid& monoid, std::size_t rank) {
  return {monoid, std::vector<WeilDivisor>(rank, WeilDivisor::zero(monoid.num_facets()))};
}

std::vector<GroupElement> class_multiset(const ModuleClass& M) {
  std::vector<GroupElement> out;
  for (const auto& D : M.summands) out.push_back(M.monoid.class_group().of(D));
  std::sort(out.begin(), out.end());
  return out;
}

std::set<GroupElement> class_set(const ModuleClass& M) {
  auto v = class_multiset(M);
  return {v.begin(), v.end()};
}

bool add_equivalent(const ModuleClass& M, const ModuleClass& N) {
  same_monoid(M, N);
  return class_set(M) == class_set(N);
}

GroupElement det_class(const ModuleClass& M) {
  const auto& G = group_of(M.monoid);
  GroupElement s = G.zero();
  for (const auto& D : M.summands) s = G.add(s, M.monoid.class_group().of(D));
  return s;
}

DetComparison tensor_det(const ModuleClass& M, const ModuleClass& N) {
  same_monoid(M, N);
  const auto& G = group_of(M.monoid);
  const auto& Cl = M.monoid.class_group();
  GroupElement formula = G.add(G.scale(static_cast<long>(M.rank()), det_class(N)),
                               G.scale(static_cast<long>(N.rank()), det_class(M)));
  GroupElement expansion = G.zero();
  for (const auto& D : M.summands)
    for (const auto& E : N.summands) expansion = G.add(expansion, Cl.of(D + E));
  return {formula, expansion};
}

DetComparison hom_det(const ModuleClass& M, const ModuleClass& N) {
  same_monoid(M, N);
  const auto& G = group_of(M.monoid);
  const auto& Cl = M.monoid.class_group();
  GroupElement formula = G.sub(G.scale(static_cast<long>(M.rank()), det_class(N)),
                               G.scale(static_cast<long>(N.rank()), det_class(M)));
  GroupElement expansion = G.zero();
  for (const auto& D : M.summands)
    for (const auto& E : N.summands) expansion = G.add(expansion, Cl.of(E - D));
  return {formula, expansion};
}

ModuleClass nakayama(const ModuleClass& M) {
  const WeilDivisor K = canonical_divisor(M.monoid);
  ModuleClass out{M.monoid, {}};
  for (const auto& D : M.summands) out.summands.push_back(D + K);
  return out;
}

QGorenstein is_q_gorenstein(const AffineMonoid& monoid) {
  const auto& Cl = monoid.class_group();
  auto order = Cl.group.order(Cl.of(canonical_divisor(monoid)));
  if (!order) return {false, std::nullopt};
  return {true, to_int64(*order)};
}

bool gm_criterion(const ModuleClass& M) { return class_set(M) == class_set(nakayama(M)); }

GmWitness gm_exists(const AffineMonoid& monoid) {
  QGorenstein q = is_q_gorenstein(monoid);
  if (!q.flag) return {false, std::nullopt};
  ModuleClass W{monoid, {}};
  const WeilDivisor K = canonical_divisor(monoid);
  for (std::int64_t i = 0; i < *q.index; ++i) W.summands.push_back(K.scaled(i));
  return {true, W};
}

std::vector<Point> hom_realization(const AffineMonoid& monoid, const std::vector<Point>& source_points,
                                   const WeilDivisor& Y, std::int64_t radius) {
  require(!source_points.empty(), ErrorKind::BoxTooSmall, "no source points in the box");
  // m + x lies in p(Y) for every x iff, facet by facet, m clears the
  // smallest pairing among the x.
  const auto& normals = monoid.facet_normals();
  std::vector<std::int64_t> low(normals.size());
  for (std::size_t f = 0; f < normals.size(); ++f) {
    low[f] = dot(source_points.front(), normals[f]);
    for (const auto& x : source_points) low[f] = std::min(low[f], dot(x, normals[f]));
  }
  return box_points(monoid.rank(), radius, [&](const Point& m) {
    for (std::size_t f = 0; f < normals.size(); ++f)
      if (checked_add(dot(m, normals[f]), low[f]) < -Y.coeffs[f]) return false;
    return true;
  });
}

bool hom_matches(const AffineMonoid& M, const WeilDivisor& A, const WeilDivisor& B, std::int64_t box,
                 std::int64_t* radius) {
  const std::int64_t r = generator_radius(M, A);
  require(r <= box, ErrorKind::BoxTooSmall,
          "generators of the source reach radius " + std::to_string(r) + " beyond the box " + std::to_string(box));
  if (radius) *radius = box - r;
  auto hom = hom_realization(M, divisorial_points(M, A, box), B, box - r);
  return hom == divisorial_points(M, B - A, box - r);
}

ArDualityReport ar_duality_check(const AffineMonoid& monoid, const WeilDivisor& X, const WeilDivisor& Y,
                                 std::int64_t box) {
  require(X.size() == monoid.num_facets() && Y.size() == monoid.num_facets(), ErrorKind::MonoidMismatch,
          "divisor length does not match the facet count");
  const WeilDivisor K = canonical_divisor(monoid);
  ArDualityReport rep;
  rep.lhs = (X + K) - Y;     // Hom(p(Y), p(X + K))
  rep.rhs = K - (Y - X);     // Hom(p(Y - X), p(K))
  rep.identity = rep.lhs == rep.rhs && rep.lhs == X + K - Y;

  std::int64_t r1 = 0, r2 = 0, r3 = 0;
  const bool hom_xy = hom_matches(monoid, X, Y, box, &r1);
  const bool hom_y_nux = hom_matches(monoid, Y, X + K, box, &r2);
  const bool dual = hom_matches(monoid, Y - X, K, box, &r3);
  rep.lattice = hom_xy && hom_y_nux && dual;
  rep.checked_radius = std::min({r1, r2, r3});
  return rep;
}

SelfDualTorsion end_selfdual_torsion(const ModuleClass& M) {
  const auto& G = group_of(M.monoid);
  const auto& Cl = M.monoid.class_group();
  const GroupElement k = Cl.of(canonical_divisor(M.monoid));
  std::vector<GroupElement> ends, shifted;
  for (const auto& D : M.summands)
    for (const auto& E : M.summands) {
      GroupElement c = Cl.of(E - D);
      ends.push_back(c);
      shifted.push_back(G.add(c, k));
    }
  std::sort(ends.begin(), ends.end());
  std::sort(shifted.begin(), shifted.end());
  if (ends != shifted) return {false, std::nullopt};
  const auto r = static_cast<std::int64_t>(M.rank());
  return {true, r * r};
}

GradedModuleClass lift_to_cover(const ModuleClass& M) {
  QGorenstein q = is_q_gorenstein(M.monoid);
  require(q.flag, ErrorKind::NotQGorenstein, "the canonical class has infinite order");
  GradedModuleClass out{M.monoid, *q.index, {}};
  ModuleClass cur = M;
  for (std::int64_t j = 0; j < *q.index; ++j) {
    for (const auto& D : cur.summands) out.summands.emplace_back(j, D);
    cur = nakayama(cur);
  }
  return out;
}

ModuleClass restrict_from_cover(const GradedModuleClass& G) {
  ModuleClass out{G.monoid, {}};
  for (const auto& [tag, D] : G.summands) out.summands.push_back(D);
  return out;
}

StableSetSearch search_stable_class_sets(const AffineMonoid& monoid, std::size_t max_size, std::int64_t window) {
  const auto& G = group_of(monoid);
  const GroupElement k = monoid.class_group().of(canonical_divisor(monoid));

  std::vector<GroupElement> pool;
  GroupElement cur = G.zero();
  const std::size_t t = G.invariant_factors().size();
  std::function<void(std::size_t)> fill = [&](std::size_t i) {
    if (i == G.num_coords()) {
      pool.push_back(cur);
      return;
    }
    if (i < t) {
      for (Integer v = 0; v < G.invariant_factors()[i]; ++v) {
        cur.coords[i] = v;
        fill(i + 1);
      }
    } else {
      for (std::int64_t v = -window; v <= window; ++v) {
        cur.coords[i] = static_cast<long>(v);
        fill(i + 1);
      }
    }
  };
  fill(0);
  std::sort(pool.begin(), pool.end());

  StableSetSearch out;
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) {
    if (!pick.empty()) {
      ++out.sets_checked;
      std::set<GroupElement> s, shifted;
      for (auto i : pick) {
        s.insert(pool[i]);
        shifted.insert(G.add(pool[i], k));
      }
      if (s == shifted) {
        out.stable = std::vector<GroupElement>(s.begin(), s.end());
        return true;
      }
    }
    if (pick.size() == max_size) return false;
    for (std::size_t i = start; i < pool.size(); ++i) {
      pick.push_back(i);
      if (rec(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  rec(0);
  return out;
}

}  // namespace cancov
