#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sobstab {

enum class ErrorCode {
  InvalidOrder,
  DegreeOutOfRange,
  AliasedGrid,
  SubcriticalExponent,
  SupercriticalExponent,
  DimensionTooSmall,
  InvalidArgument,
  QuadratureNotConverged,
  DegenerateDistance,
  EpsilonOutOfRange,
  NoisyScan,
  InsufficientRange,
  SearchDegenerate,
};

std::string_view to_string(ErrorCode code);

/// True for codes that signal a numerical failure rather than bad input.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Adaptive quadrature hit its grid cap; carries the last two estimates.
class QuadratureNotConverged : public Error {
 public:
  QuadratureNotConverged(double previous, double last)
      : Error(ErrorCode::QuadratureNotConverged,
              "L^q integral still changing at grid cap (" + std::to_string(previous) + " -> " +
                  std::to_string(last) + ")"),
        previous_(previous),
        last_(last) {}

  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

}  // namespace sobstab
