#include "cancov/integer.hpp"

#include <numeric>
#include <sstream>

namespace cancov {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::NotFullDimensional: return "NotFullDimensional";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotQGorenstein: return "NotQGorenstein";
    case ErrorKind::NoMonomialTrivialization: return "NoMonomialTrivialization";
    case ErrorKind::BoxTooSmall: return "BoxTooSmall";
    case ErrorKind::MonoidMismatch: return "MonoidMismatch";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::BadRoot: return "BadRoot";
    case ErrorKind::NotSplit: return "NotSplit";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Inconsistent: return "Inconsistent";
  }
  return "Unknown";
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) fail(ErrorKind::Overflow, "integer does not fit in 64 bits");
  return z.get_si();
}

std::int64_t to_int64(const Rational& q) {
  if (q.get_den() != 1) fail(ErrorKind::InvalidArgument, "rational is not integral");
  return to_int64(Integer(q.get_num()));
}

std::int64_t dot(const Point& a, const Point& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

Point add(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

Point sub(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_sub(a[i], b[i]);
  return r;
}

Point scale(std::int64_t s, const Point& a) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(s, a[i]);
  return r;
}

bool is_zero(const Point& a) {
  for (auto x : a)
    if (x != 0) return false;
  return true;
}

Point primitive(const Point& a) {
  std::int64_t g = 0;
  for (auto x : a) g = std::gcd(g, x);
  if (g <= 1) return a;
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] / g;
  return r;
}

std::vector<Integer> primitive(const std::vector<Integer>& a) {
  Integer g = 0;
  for (const auto& x : a) g = gcd(g, x);
  if (g <= 1) return a;
  std::vector<Integer> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] / g;
  return r;
}

std::string to_string(const Point& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ')';
  return os.str();
}

}  // namespace cancov
