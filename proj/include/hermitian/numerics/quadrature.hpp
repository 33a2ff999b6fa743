#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hermitian/error.hpp"

namespace hermitian {

/// Endpoint-aware integrand for integrate_endpoint_singular: called as
/// fn(x, xc) where xc < 0 means x sits in the left half with x - a == -xc,
/// and xc > 0 means the right half with b - x == xc. Both distances are
/// exact, so integrands like 1/sqrt(x - a) lose no precision near a.
template <class Fn>
concept EndpointAwareIntegrand = requires(Fn fn, double x) {
  { fn(x, x) } -> std::convertible_to<double>;
};

namespace detail {

/// Tanh-sinh rule on [a, b]. Abscissae s = tanh(pi/2 sinh(kh)) on (-1, 1);
/// the complements 1 - |s| are formed directly from exp(-pi sinh|kh|) so the
/// integrand sees exact endpoint distances down to underflow. The step is
/// halved until two successive levels agree to tol.
/// With exact_distances false the integrand only sees x, so nodes whose
/// abscissa rounds onto an endpoint are dropped.
template <bool exact_distances, class Fn>
double tanh_sinh(Fn&& fn, double a, double b, double tol) {
  if (!(a < b)) throw Error(ErrorKind::Domain, "integration requires a < b");
  if (!(tol > 0.0)) throw Error(ErrorKind::Domain, "quadrature tolerance must be positive");
  constexpr int kMaxLevel = 12;
  constexpr double kHalfPi = std::numbers::pi / 2;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  // Contribution of the symmetric pair +-kh, or of the centre if k == 0.
  auto pair = [&](double kh, bool centre) -> double {
    if (centre) return kHalfPi * fn(mid, b - mid);
    const double u = kHalfPi * std::sinh(kh);
    const double e = std::exp(-2.0 * u);
    const double comp = 2.0 * e / (1.0 + e);  // 1 - tanh(u)
    const double w = kHalfPi * std::cosh(kh) * 4.0 * e / ((1.0 + e) * (1.0 + e));  // pi/2 cosh(kh) sech^2(u)
    const double dist = half * comp;
    if (!(dist > 0.0) || w == 0.0) return 0.0;
    const double xl = a + dist, xr = b - dist;
    double sum = 0.0;
    if (exact_distances || xl != a) sum += fn(xl, -dist);
    if (exact_distances || xr != b) sum += fn(xr, dist);
    return w * sum;
  };

  // Largest kh worth visiting: beyond it the endpoint distance underflows.
  const double kh_max = std::asinh((std::log(half) - std::log(std::numeric_limits<double>::min())) / std::numbers::pi);

  double h = 1.0;
  double sum = pair(0.0, true);
  for (int k = 1; k * h <= kh_max; ++k) sum += pair(k * h, false);
  double estimate = h * sum * half;

  for (int level = 1; level <= kMaxLevel; ++level) {
    h *= 0.5;
    double added = 0.0;
    for (int k = 1; k * h <= kh_max; k += 2) added += pair(k * h, false);
    sum += added;
    const double next = h * sum * half;
    if (!std::isfinite(next)) throw Error(ErrorKind::Evaluation, "non-finite quadrature result");
    const double diff = std::abs(next - estimate);
    estimate = next;
    if (level >= 3 && diff <= tol) return estimate;
  }
  throw Error(ErrorKind::Accuracy, "tanh-sinh quadrature did not converge within " + std::to_string(kMaxLevel) +
                                       " levels");
}

}  // namespace detail

/// Integral over [a, b] of an integrand with at worst inverse-square-root
/// endpoint singularities, by the tanh-sinh (double exponential) rule.
/// Absolute error target tol.
template <class Fn>
double integrate_endpoint_singular(Fn&& fn, double a, double b, double tol) {
  if constexpr (EndpointAwareIntegrand<Fn>) {
    return detail::tanh_sinh<true>([&](double x, double xc) { return static_cast<double>(fn(x, xc)); }, a, b, tol);
  } else {
    return detail::tanh_sinh<false>([&](double x, double) { return static_cast<double>(fn(x)); }, a, b, tol);
  }
}

/// Adaptive 61-point Gauss-Kronrod for smooth integrands.
template <class Fn>
double integrate_smooth(Fn&& fn, double a, double b, double tol = 1e-13) {
  if (a == b) return 0.0;
  double err = 0.0;
  auto g = [&fn](double x) { return static_cast<double>(fn(x)); };
  const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, a, b, 15, tol, &err);
  if (!std::isfinite(q)) throw Error(ErrorKind::Evaluation, "non-finite quadrature result");
  if (err > 1e3 * tol * std::max(std::abs(q), 1.0)) {
    throw Error(ErrorKind::Accuracy, "Gauss-Kronrod quadrature did not converge");
  }
  return q;
}

}  // namespace hermitian
