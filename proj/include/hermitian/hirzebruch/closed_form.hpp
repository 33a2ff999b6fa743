#pragma once

// Closed-form families y(phi) for the three constructions on Hirzebruch
// surfaces. In each, phi(t) solves phi' = +-sqrt(y(phi)) and the profile is
//   chern:    h = phi,       f = -(1/2) phi' phi,  phi decreasing
//   third:    h = sqrt(phi), f = (1/4) phi',       phi increasing
//   critical: h = phi,       f = -(7/5) phi' phi,  phi decreasing
// with phi(0) = phi0 and phi(l) = phi1 the two simple zeros of y.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hermitian/error.hpp"
#include "hermitian/numerics/jet.hpp"
#include "hermitian/numerics/linear.hpp"
#include "hermitian/numerics/roots.hpp"

namespace hermitian {

enum class SolutionKind { Chern, Third, Critical };

inline std::string_view to_string(SolutionKind k) {
  switch (k) {
    case SolutionKind::Chern: return "chern";
    case SolutionKind::Third: return "third";
    case SolutionKind::Critical: return "critical";
  }
  return "unknown";
}

inline std::optional<SolutionKind> parse_solution_kind(std::string_view s) {
  if (s == "chern") return SolutionKind::Chern;
  if (s == "third") return SolutionKind::Third;
  if (s == "critical") return SolutionKind::Critical;
  return std::nullopt;
}

struct ClosedFormSolution {
  SolutionKind kind = SolutionKind::Chern;
  int m = 1;
  double phi0 = 1.0;
  double phi1 = 1.0;
  double lambda = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  /// +1 when phi increases from phi0 to phi1, -1 otherwise.
  [[nodiscard]] double direction() const noexcept { return phi1 > phi0 ? 1.0 : -1.0; }
};

/// y(phi) for the solution's family. Works on doubles and on jets, so
/// derivatives in phi are exact.
template <class T>
T y_eval(const ClosedFormSolution& s, const T& phi) {
  using std::pow;
  using std::sqrt;
  if (value_of(phi) <= 0.0) throw Error(ErrorKind::Domain, "y(phi) requires phi > 0");
  switch (s.kind) {
    case SolutionKind::Chern: {
      const T p4 = phi * phi * phi * phi;
      return (-s.lambda * p4 * phi * phi + 3.0 * s.c1 * p4 * phi - 6.0 * p4 + T(3.0 * s.c2)) / (3.0 * p4);
    }
    case SolutionKind::Third: {
      const T r = sqrt(phi);
      return (-8.0 * s.lambda * phi * phi * r + 15.0 * s.c1 * phi + 160.0 * phi * r + T(15.0 * s.c2)) / (15.0 * r);
    }
    case SolutionKind::Critical:
      return -5.0 * s.lambda * phi * phi / 84.0 + s.c1 * pow(phi, -0.8) + s.c2 * pow(phi, -10.0) + T(1.0);
  }
  throw Error(ErrorKind::Domain, "unknown solution kind");
}

/// dy/dphi.
inline double y_prime(const ClosedFormSolution& s, double phi) {
  return y_eval(s, Jet<1>::variable(phi)).d(1);
}

// ---------------------------------------------------------------------------
// Constant Chern scalar curvature.

/// Coefficients of P(x) = (m+2)x^4 - (2m-1)x^3 - 3m x^2 - (2m+1)x + (m-2),
/// highest degree first. x = phi0/phi1.
inline std::array<double, 5> chern_ratio_polynomial(int m) {
  const double d = m;
  return {d + 2.0, -(2.0 * d - 1.0), -3.0 * d, -(2.0 * d + 1.0), d - 2.0};
}

inline double eval_polynomial(const std::array<double, 5>& c, double x) {
  double r = 0.0;
  for (double a : c) r = r * x + a;
  return r;
}

/// Smallest root above 1 of the ratio polynomial. P(1) = -5m < 0 and the
/// leading coefficient is positive, so a root always exists.
inline double chern_ratio_root(int m) {
  if (m < 1) throw Error(ErrorKind::Domain, "degree m must be a positive integer");
  const auto p = chern_ratio_polynomial(m);
  auto fn = [&p](double x) { return eval_polynomial(p, x); };
  const auto [lo, hi] = scan_upward(fn, 1.0 + 1e-9, 0.5, 1000);
  return find_root_bracketed(fn, lo, hi, 1e-15);
}

/// m as a function of (phi0, phi1) for the Chern family.
inline double chern_degree(double phi0, double phi1) {
  const double a = phi0, b = phi1;
  const double den = a * a * a * a - 2 * a * a * a * b - 3 * a * a * b * b - 2 * a * b * b * b + b * b * b * b;
  return (-2 * a * a * a * a - a * a * a * b + a * b * b * b + 2 * b * b * b * b) / den;
}

/// The factored form 2m (phi0 - phi)(phi1 - phi) Phi(phi) / (phi^4 (phi1+phi0)(phi1-phi0)(2phi0^2+2phi1^2+phi0 phi1)).
inline double chern_y_factored(const ClosedFormSolution& s, double phi) {
  const double a = s.phi0, b = s.phi1, p = phi;
  const double big_phi = p * p * p * p * (3 * a * a + 4 * a * b + 3 * b * b) +
                         p * p * p * (a * a * a + a * a * b + a * b * b + b * b * b) +
                         p * p * (a * a * a * b + a * a * b * b + a * b * b * b) + p * (a * a * a * b * b + a * a * b * b * b) +
                         a * a * a * b * b * b;
  return 2.0 * s.m * (a - p) * (b - p) * big_phi / (p * p * p * p * (b + a) * (b - a) * (2 * a * a + 2 * b * b + a * b));
}

/// Constant Chern scalar curvature solution with the scale fixed by phi1.
inline ClosedFormSolution solve_chern(int m, double phi1) {
  if (m < 1) throw Error(ErrorKind::Domain, "degree m must be a positive integer");
  if (!(phi1 > 0.0)) throw Error(ErrorKind::Domain, "phi1 must be positive");
  double x = 0.0;
  try {
    x = chern_ratio_root(m);
  } catch (const Error& e) {
    throw Error(ErrorKind::Solver, std::string("ratio polynomial root search failed: ") + e.what());
  }
  ClosedFormSolution s;
  s.kind = SolutionKind::Chern;
  s.m = m;
  s.phi1 = phi1;
  s.phi0 = x * phi1;
  const double a = s.phi0, b = s.phi1;
  const double den = a * a * a * a - 2 * a * a * a * b - 3 * a * a * b * b - 2 * a * b * b * b + b * b * b * b;
  s.lambda = -6.0 * (3 * a * a + 4 * a * b + 3 * b * b) / den;
  s.c1 = -4.0 * (a + b) * (a + b) * (a + b) / den;
  s.c2 = 2.0 * a * a * a * a * b * b * b * b / den;
  if (std::abs(chern_degree(a, b) - m) > 1e-10 * m) {
    throw Error(ErrorKind::Solver, "degree identity not reproduced by the solved endpoints");
  }
  if (!(s.lambda > 0.0)) throw Error(ErrorKind::InvalidSolution, "solved lambda is not positive");
  return s;
}

// ---------------------------------------------------------------------------
// Constant third scalar curvature (m = 1 only).

/// m as a function of (phi0, phi1) for the third-scalar family.
inline double third_degree(double phi0, double phi1) {
  const double r0 = std::sqrt(phi0), r1 = std::sqrt(phi1);
  const double num = -8 * phi0 * r0 + 8 * phi1 * r1 + 6 * r0 * phi1 - 6 * r1 * phi0;
  const double den = 6 * phi0 * r0 + 6 * phi1 * r1 + 9 * r0 * phi1 + 9 * r1 * phi0;
  return num / den;
}

/// (6m-8) s^3 + (9m-6) s^2 + (9m+6) s + (6m+8) with s = sqrt(phi1/phi0).
inline double third_ratio_polynomial(int m, double s) {
  return (6.0 * m - 8.0) * s * s * s + (9.0 * m - 6.0) * s * s + (9.0 * m + 6.0) * s + (6.0 * m + 8.0);
}

/// phi1/phi0 for m = 1 in radicals.
inline double third_ratio_m1() {
  const double c = std::cbrt(44.0 + 11.0 * std::sqrt(5.0));
  const double r = c / 2.0 + 11.0 / (2.0 * c) + 0.5;
  return r * r;
}

inline ClosedFormSolution solve_third(int m, double phi0) {
  if (m != 1) {
    throw Error(ErrorKind::UnsupportedDegree,
                "m = " + std::to_string(m) + ": the third-scalar family is only solved for m = 1");
  }
  if (!(phi0 > 0.0)) throw Error(ErrorKind::Domain, "phi0 must be positive");
  ClosedFormSolution s;
  s.kind = SolutionKind::Third;
  s.m = m;
  s.phi0 = phi0;
  s.phi1 = third_ratio_m1() * phi0;
  const double a = s.phi0, b = s.phi1, ra = std::sqrt(a), rb = std::sqrt(b);
  const double den = 6 * a * ra + 6 * b * rb + 9 * ra * b + 9 * rb * a;
  s.lambda = 40.0 / (2 * a + 2 * b + ra * rb);
  s.c1 = -32.0 * ra * rb * (a + b + 3 * ra * rb) / den;
  s.c2 = -32.0 * a * ra * b * rb / den;
  if (std::abs(third_degree(a, b) - m) > 1e-10) {
    throw Error(ErrorKind::Solver, "degree identity not reproduced by the solved endpoints");
  }
  if (!(s.lambda > 0.0)) throw Error(ErrorKind::InvalidSolution, "solved lambda is not positive");
  return s;
}

// ---------------------------------------------------------------------------
// Gauduchon-critical metrics.

namespace detail {

/// For trial phi1, (lambda, c1, c2) from y(phi0) = y(phi1) = 0 and
/// y'(phi0) = -10m/(7 phi0). Columns are scaled so c2 phi^-10 stays O(1).
inline ClosedFormSolution critical_trial(int m, double phi0, double phi1) {
  const double cs = std::pow(phi1, -10.0);  // column scale for c2
  const double ls = phi0 * phi0;            // column scale for lambda
  Eigen::Matrix3d a;
  Eigen::Vector3d rhs;
  a << -5.0 * phi0 * phi0 / 84.0 / ls, std::pow(phi0, -0.8), std::pow(phi0, -10.0) / cs,  //
      -5.0 * phi1 * phi1 / 84.0 / ls, std::pow(phi1, -0.8), 1.0,                          //
      -10.0 * phi0 / 84.0 / ls, -0.8 * std::pow(phi0, -1.8), -10.0 * std::pow(phi0, -11.0) / cs;
  rhs << -1.0, -1.0, -10.0 * m / (7.0 * phi0);
  const Eigen::VectorXd v = solve_linear(a, rhs);
  ClosedFormSolution s;
  s.kind = SolutionKind::Critical;
  s.m = m;
  s.phi0 = phi0;
  s.phi1 = phi1;
  s.lambda = v(0) / ls;
  s.c1 = v(1);
  s.c2 = v(2) / cs;
  return s;
}

inline double critical_residual(const ClosedFormSolution& s) {
  return s.phi1 * y_prime(s, s.phi1) - 10.0 * s.m / 7.0;
}

}  // namespace detail

/// True iff y > 0 at n_scan nodes strictly between the endpoints and the
/// endpoints themselves are zeros of y, relative to the largest scanned |y|.
inline bool positivity_check(const ClosedFormSolution& s, int n_scan = 1000) {
  if (n_scan < 100) throw Error(ErrorKind::Domain, "positivity scan needs at least 100 nodes");
  const double lo = std::min(s.phi0, s.phi1), hi = std::max(s.phi0, s.phi1);
  double ymax = 0.0;
  for (int i = 1; i <= n_scan; ++i) {
    const double phi = lo + (hi - lo) * i / (n_scan + 1.0);
    const double y = y_eval(s, phi);
    if (!(y > 0.0)) return false;
    ymax = std::max(ymax, y);
  }
  const double tol = 1e-8 * ymax;
  return std::abs(y_eval(s, s.phi0)) <= tol && std::abs(y_eval(s, s.phi1)) <= tol;
}

/// Gauduchon-critical solution with the scale fixed by phi0. Scans phi1/phi0
/// over (1e-6, 1 - 1e-6) at 2000 log-spaced probes for sign changes of the
/// remaining boundary condition y'(phi1) = 10m/(7 phi1), refines each, and
/// keeps roots giving lambda > 0, y > 0 inside and a non-degenerate interval.
/// Returns the admissible root with the largest phi1.
inline ClosedFormSolution solve_critical(int m, double phi0) {
  if (m < 1) throw Error(ErrorKind::Domain, "degree m must be a positive integer");
  if (!(phi0 > 0.0)) throw Error(ErrorKind::Domain, "phi0 must be positive");

  auto residual = [&](double ratio) {
    try {
      return detail::critical_residual(detail::critical_trial(m, phi0, ratio * phi0));
    } catch (const Error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };

  constexpr int kProbes = 2000;
  std::vector<double> probes(kProbes);
  const double lo = std::log(1e-6), hi = std::log1p(-1e-6);
  for (int i = 0; i < kProbes; ++i) probes[i] = std::exp(lo + (hi - lo) * i / (kProbes - 1.0));

  std::optional<ClosedFormSolution> best;
  for (const auto& [a, b] : sign_change_brackets(residual, probes)) {
    double ratio = 0.0;
    try {
      ratio = find_root_bracketed(residual, a, b, 1e-15);
    } catch (const Error&) {
      continue;
    }
    if (ratio > 1.0 - 1e-3) continue;  // collapsed interval
    ClosedFormSolution s = detail::critical_trial(m, phi0, ratio * phi0);
    if (!(s.lambda > 0.0)) continue;
    if (std::abs(detail::critical_residual(s)) > 1e-8 * m) continue;
    if (!positivity_check(s, 1000)) continue;
    if (!best || s.phi1 > best->phi1) best = s;
  }
  if (!best) {
    throw Error(ErrorKind::NoSolution,
                "no Gauduchon-critical solution found for m = " + std::to_string(m) + " in the phi1/phi0 scan");
  }
  return *best;
}

/// Dispatch on kind. scale is phi1 for chern and phi0 otherwise.
inline ClosedFormSolution solve_closed_form(SolutionKind kind, int m, double scale) {
  switch (kind) {
    case SolutionKind::Chern: return solve_chern(m, scale);
    case SolutionKind::Third: return solve_third(m, scale);
    case SolutionKind::Critical: return solve_critical(m, scale);
  }
  throw Error(ErrorKind::Domain, "unknown solution kind");
}

}  // namespace hermitian
