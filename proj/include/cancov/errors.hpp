#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cancov {

enum class ErrorKind {
  InvalidArgument,
  ParseError,
  NotPointed,
  NotFullDimensional,
  BudgetExceeded,
  NotQGorenstein,
  NoMonomialTrivialization,
  BoxTooSmall,
  MonoidMismatch,
  NoInverse,
  BadRoot,
  NotSplit,
  Overflow,
  Inconsistent,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so that front ends can
/// map it onto exit codes without parsing messages.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace cancov
