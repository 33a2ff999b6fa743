#pragma once

// Closed-form curvature of the Hermitian structure (J, g) with
//   g = h^2 (e1^2 + e2^2) + f^2 e3^2 + dt^2,   J E1 = E2,  J E3 = E4,
// where E1 = X/h, E2 = Y/h, E3 = V/f, E4 = d/dt. All quantities are
// pointwise in t and take the profile jets at that point.

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "hermitian/geometry/profile.hpp"

namespace hermitian {

/// Two J-invariant components (12, 34) of a real (1,1)-form.
struct FormComponents {
  double c12 = 0.0;
  double c34 = 0.0;
  [[nodiscard]] double trace() const noexcept { return c12 + c34; }
};

namespace detail {
struct Local {
  double f, f1, f2, h, h1, h2;
  explicit Local(const ProfilePoint& p)
      : f(p.f.value()), f1(p.f.d(1)), f2(p.f.d(2)), h(p.h.value()), h1(p.h.d(1)), h2(p.h.d(2)) {}
};
}  // namespace detail

/// dt-coefficient of the Lee form, theta = 2 (h h' - f) / h^2 dt.
inline double lee_form(const ProfilePoint& p) {
  const double f = p.f.value(), h = p.h.value(), h1 = p.h.d(1);
  return 2.0 * (h * h1 - f) / (h * h);
}

inline double chern_scalar(const ProfilePoint& p) {
  const detail::Local q(p);
  const double f = q.f, f1 = q.f1, f2 = q.f2, h = q.h, h1 = q.h1, h2 = q.h2;
  return (4 * h * f - 2 * f1 * f * h - 2 * h1 * f * f + h1 * h1 * h * f - h1 * f1 * h * h - h2 * f * h * h -
          f2 * h * h * h) /
         (h * h * h * f);
}

inline double third_scalar(const ProfilePoint& p) {
  const detail::Local q(p);
  const double f = q.f, f1 = q.f1, f2 = q.f2, h = q.h, h1 = q.h1;
  const double h4 = h * h * h * h;
  return (-f2 * h4 - 2 * f * (-h1 * f * h + 2 * f1 * h * h + f * f - 2 * h * h)) / (h4 * f);
}

inline double riemannian_scalar(const ProfilePoint& p) {
  const detail::Local q(p);
  const double f = q.f, f1 = q.f1, f2 = q.f2, h = q.h, h1 = q.h1, h2 = q.h2;
  return -4 * h2 / h - 2 * f2 / f - 2 * h1 * h1 / (h * h) - 4 * h1 * f1 / (h * f) - 2 * f * f / (h * h * h * h) +
         8 / (h * h);
}

/// First (Hermitian) Ricci form rho = rho12 s1^s2 + rho34 s3^s4.
inline FormComponents first_ricci(const ProfilePoint& p) {
  const detail::Local q(p);
  const double f = q.f, f1 = q.f1, f2 = q.f2, h = q.h, h1 = q.h1, h2 = q.h2;
  return {(4 * h * h - 2 * f1 * h * h - 2 * h1 * f * h) / (h * h * h * h),
          (h1 * h1 * f - h1 * f1 * h - h2 * f * h - f2 * h * h) / (h * h * f)};
}

/// Second Ricci form r = r12 s1^s2 + r34 s3^s4.
inline FormComponents second_ricci(const ProfilePoint& p) {
  const detail::Local q(p);
  const double f = q.f, f1 = q.f1, f2 = q.f2, h = q.h, h1 = q.h1, h2 = q.h2;
  const double h3 = h * h * h, h4 = h3 * h;
  return {(-h2 * f * h3 - f1 * h1 * h3 + h1 * h1 * f * h * h - 2 * h1 * f * f * h - 2 * f * f * f + 4 * h * h * f) /
              (h4 * f),
          2 * f * f / h4 - 2 * f1 / (h * h) - f2 / f};
}

/// s^C + delta theta in closed form (the Gauduchon-critical combination in
/// complex dimension 2).
inline double gauduchon_combination(const ProfilePoint& p) {
  const detail::Local q(p);
  const double f = q.f, f1 = q.f1, f2 = q.f2, h = q.h, h1 = q.h1, h2 = q.h2;
  return (-3 * h2 * f * h * h - f2 * h * h * h - h1 * h1 * f * h - 3 * h1 * f1 * h * h - 2 * h1 * f * f +
          2 * f1 * f * h + 4 * f * h) /
         (h * h * h * f);
}

/// d/dt of (4h^2 - 2f'h^2 - 2h'fh)/h^2 minus 2 (h'^2 f - h'f'h - h''fh - f''h^2)/h^2.
/// The derivative is taken by Taylor arithmetic on the jets, independently
/// of the right-hand side expression; the result vanishes for every
/// profile because the first Ricci form is closed.
inline double ricci_closedness_residual(const ProfilePoint& p) {
  const Jet<2> f = p.f.truncate<2>();
  const Jet<2> h = p.h.truncate<2>();
  const Jet<2> f1 = p.f.derivative();
  const Jet<2> h1 = p.h.derivative();
  const Jet<2> lhs = (4.0 * h * h - 2.0 * f1 * h * h - 2.0 * h1 * f * h) / (h * h);
  const detail::Local q(p);
  const double rhs = 2.0 * (q.h1 * q.h1 * q.f - q.h1 * q.f1 * q.h - q.h2 * q.f * q.h - q.f2 * q.h * q.h) / (q.h * q.h);
  return lhs.d(1) - rhs;
}

/// Codifferential of the Lee form, delta theta = -(h^2 f)^{-1} (h^2 f theta_t)',
/// with h^2 f the volume density along t. Derivative by Taylor arithmetic.
inline double codifferential_lee(const ProfilePoint& p) {
  const Jet<2> f = p.f.truncate<2>();
  const Jet<2> h = p.h.truncate<2>();
  const Jet<2> h1 = p.h.derivative();
  const Jet<2> theta = 2.0 * (h * h1 - f) / (h * h);
  const Jet<2> density = h * h * f;
  const Jet<2> flux = density * theta;
  return -flux.d(1) / density.value();
}

// Interior-checked overloads on whole profiles.

template <Profile P>
double lee_form(const P& p, double t) {
  require_interior(p, t);
  return lee_form(p.at(t));
}
template <Profile P>
double chern_scalar(const P& p, double t) {
  require_interior(p, t);
  return chern_scalar(p.at(t));
}
template <Profile P>
double third_scalar(const P& p, double t) {
  require_interior(p, t);
  return third_scalar(p.at(t));
}
template <Profile P>
double riemannian_scalar(const P& p, double t) {
  require_interior(p, t);
  return riemannian_scalar(p.at(t));
}
template <Profile P>
FormComponents first_ricci(const P& p, double t) {
  require_interior(p, t);
  return first_ricci(p.at(t));
}
template <Profile P>
FormComponents second_ricci(const P& p, double t) {
  require_interior(p, t);
  return second_ricci(p.at(t));
}
template <Profile P>
double gauduchon_combination(const P& p, double t) {
  require_interior(p, t);
  return gauduchon_combination(p.at(t));
}
template <Profile P>
double ricci_closedness_residual(const P& p, double t) {
  require_interior(p, t);
  return ricci_closedness_residual(p.at(t));
}
template <Profile P>
double codifferential_lee(const P& p, double t) {
  require_interior(p, t);
  return codifferential_lee(p.at(t));
}

/// Kahler test f = h h', relative to max |f| over the interior nodes.
template <Profile P>
bool is_kahler(const P& p, double tol, std::size_t n_scan = 257) {
  double worst = 0.0, fmax = 0.0;
  for (std::size_t i = 1; i + 1 < n_scan; ++i) {
    const double t = p.length() * static_cast<double>(i) / static_cast<double>(n_scan - 1);
    const auto q = p.at(t);
    worst = std::max(worst, std::abs(q.f.value() - q.h.value() * q.h.d(1)));
    fmax = std::max(fmax, std::abs(q.f.value()));
  }
  return worst <= tol * fmax;
}

/// Pointwise curvature summary.
struct CurvatureReport {
  double sC = 0.0;
  double s3 = 0.0;
  double sg = 0.0;
  FormComponents rho;
  FormComponents r;
  double theta_t = 0.0;
  double delta_theta = 0.0;
};

inline CurvatureReport curvature_report(const ProfilePoint& p) {
  return {chern_scalar(p), third_scalar(p), riemannian_scalar(p), first_ricci(p), second_ricci(p), lee_form(p),
          codifferential_lee(p)};
}

}  // namespace hermitian
