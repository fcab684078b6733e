#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "specgap/errors.hpp"

namespace specgap::detail {

// Bracketed root of a continuous function with a verified sign change.
// Terminates once the bracket is narrower than root_tol.
template <class F>
double bracketed_root(F&& f, double lo, double hi, double f_lo, double f_hi, double root_tol,
                      const char* what) {
  if (!(root_tol > 0.0)) throw DomainError(std::string(what) + ": root tolerance must be > 0");
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw ConvergenceError(std::string(what) + ": no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
  }
  constexpr std::uintmax_t kMaxIter = 200;
  std::uintmax_t iterations = kMaxIter;
  const auto tol = [root_tol](double a, double b) { return std::abs(b - a) <= root_tol; };
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, tol, iterations);
  if (iterations >= kMaxIter) {
    throw ConvergenceError(std::string(what) + ": root solve did not converge");
  }
  return 0.5 * (a + b);
}

} // namespace specgap::detail
