#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cancov/errors.hpp"

namespace cancov {

using Integer = mpz_class;
using Rational = mpq_class;

/// A lattice point or lattice functional in coordinates of Z^d. Coordinates
/// are machine words; every arithmetic step on them goes through the checked
/// helpers below and raises ErrorKind::Overflow instead of wrapping.
using Point = std::vector<std::int64_t>;

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::Overflow, "int64 addition");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorKind::Overflow, "int64 subtraction");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::Overflow, "int64 multiplication");
  return r;
}

std::int64_t to_int64(const Integer& z);
std::int64_t to_int64(const Rational& q);  // q must be integral

/// Floor division with a positive divisor.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t dot(const Point& a, const Point& b);
Point add(const Point& a, const Point& b);
Point sub(const Point& a, const Point& b);
Point scale(std::int64_t s, const Point& a);
bool is_zero(const Point& a);

/// Divide out the content; the zero vector is returned unchanged.
Point primitive(const Point& a);
std::vector<Integer> primitive(const std::vector<Integer>& a);

std::string to_string(const Point& p);

}  // namespace cancov
