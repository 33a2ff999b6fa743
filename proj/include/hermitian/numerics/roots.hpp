#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "hermitian/error.hpp"

namespace hermitian {

/// Root of fn inside a sign-changing bracket, returned once the bracket is
/// narrower than tol. Backed by TOMS 748, which interleaves bisection with
/// safeguarded interpolation steps and is fully deterministic.
template <class Fn>
double find_root_bracketed(Fn&& fn, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::Domain, "root tolerance must be positive");
  if (lo > hi) std::swap(lo, hi);

  auto checked = [&fn](double x) {
    const double v = fn(x);
    if (!std::isfinite(v)) throw Error(ErrorKind::Evaluation, "non-finite function value in root search");
    return v;
  };

  const double flo = checked(lo);
  const double fhi = checked(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw Error(ErrorKind::Bracket, "no sign change on the supplied bracket");
  }

  auto width_ok = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  std::uintmax_t max_iter = 400;
  const auto [a, b] = boost::math::tools::toms748_solve(checked, lo, hi, flo, fhi, width_ok, max_iter);
  // The last step may stop one ulp-sized bracket short of the tolerance when
  // tol is below the representable spacing.
  if (std::abs(b - a) > tol && std::abs(b - a) > 4.0 * std::numeric_limits<double>::epsilon() * std::abs(a)) {
    throw Error(ErrorKind::Solver, "root search did not reach the requested bracket width");
  }
  return 0.5 * (a + b);
}

/// Adjacent probe pairs (xs[i], xs[i+1]) across which fn changes sign.
/// Non-finite probe values are skipped.
template <class Fn>
std::vector<std::pair<double, double>> sign_change_brackets(Fn&& fn, std::span<const double> xs) {
  std::vector<std::pair<double, double>> out;
  double prev_x = 0.0, prev_v = std::numeric_limits<double>::quiet_NaN();
  for (double x : xs) {
    const double v = fn(x);
    if (std::isfinite(v) && std::isfinite(prev_v) && std::signbit(v) != std::signbit(prev_v) && v != 0.0) {
      out.emplace_back(prev_x, x);
    }
    if (std::isfinite(v)) {
      prev_x = x;
      prev_v = v;
    }
  }
  return out;
}

/// Points a, a+step, ... scanned upward until fn changes sign; returns the
/// first bracket. Used for the smallest-root-above convention.
template <class Fn>
std::pair<double, double> scan_upward(Fn&& fn, double start, double step, int max_steps) {
  double x = start;
  double v = fn(x);
  for (int i = 0; i < max_steps; ++i) {
    const double xn = x + step;
    const double vn = fn(xn);
    if (std::signbit(v) != std::signbit(vn) || vn == 0.0) return {x, xn};
    x = xn;
    v = vn;
  }
  throw Error(ErrorKind::Bracket, "no sign change found in upward scan");
}

}  // namespace hermitian
