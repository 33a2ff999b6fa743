#pragma once

// Profiles (f, h) on [0, l] from a closed-form y(phi).
//
// With phi_s = phi0 the starting value, D = phi1 - phi0 and
//   phi(u) = phi_s + D sin^2(u/2),   u in [0, pi],
// the two simple zeros of y factor out: y = D^2 sin^2(u)/4 * Q(phi) with
// Q = y / ((phi - phi0)(phi1 - phi)) smooth and positive. Then
//   dt/du = 1/sqrt(Q(phi(u)))
// is analytic on the closed interval, so t(u) is represented by a Chebyshev
// interpolant and phi(t) by inverting it. Near either endpoint Q comes from
// the Taylor series of y there, which avoids cancellation in y itself.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "hermitian/error.hpp"
#include "hermitian/geometry/curvature.hpp"
#include "hermitian/geometry/profile.hpp"
#include "hermitian/hirzebruch/closed_form.hpp"
#include "hermitian/numerics/grid.hpp"
#include "hermitian/numerics/interpolation.hpp"
#include "hermitian/numerics/jet.hpp"
#include "hermitian/numerics/quadrature.hpp"
#include "hermitian/numerics/roots.hpp"

namespace hermitian {

class HirzebruchProfile {
 public:
  static constexpr std::size_t kTaylorOrder = 14;

  explicit HirzebruchProfile(const ClosedFormSolution& sol) : sol_(sol) {
    if (!(sol.phi0 > 0.0 && sol.phi1 > 0.0) || sol.phi0 == sol.phi1) {
      throw Error(ErrorKind::InvalidSolution, "endpoints must be distinct and positive");
    }
    if (!positivity_check(sol, 1000)) {
      throw Error(ErrorKind::InvalidSolution, "y(phi) is not positive between the endpoints");
    }
    delta_ = sol.phi1 - sol.phi0;
    const double reach = 0.05 * std::min({sol.phi0, sol.phi1, std::abs(delta_)});
    taylor_radius_ = reach;
    const auto js = y_eval(sol, Jet<kTaylorOrder>::variable(sol.phi0));
    const auto je = y_eval(sol, Jet<kTaylorOrder>::variable(sol.phi1));
    for (std::size_t k = 0; k <= kTaylorOrder; ++k) {
      start_[k] = js.coeff(k);
      end_[k] = je.coeff(k);
    }
    // Simple zeros with y increasing into the interval.
    if (!(start_[1] * delta_ > 0.0) || !(end_[1] * delta_ < 0.0)) {
      throw Error(ErrorKind::InvalidSolution, "endpoints are not simple zeros of y");
    }
    build_chebyshev();
    length_ = t_of_u_(std::numbers::pi);
    cross_check_length();
  }

  [[nodiscard]] const ClosedFormSolution& solution() const noexcept { return sol_; }
  [[nodiscard]] double length() const noexcept { return length_; }
  [[nodiscard]] std::size_t chebyshev_degree() const noexcept { return t_of_u_.nodes().size() - 1; }
  /// |l from the Chebyshev route - l from tanh-sinh in phi|.
  [[nodiscard]] double length_discrepancy() const noexcept { return length_check_; }

  /// Q = y / ((phi - phi0)(phi1 - phi)) at phi = phi0 + ds = phi1 - de.
  [[nodiscard]] double q_at(double ds, double de) const {
    if (std::abs(ds) < taylor_radius_) return series_quotient(start_, ds) / de;
    if (std::abs(de) < taylor_radius_) return -series_quotient(end_, -de) / ds;
    const double phi = sol_.phi0 + ds;
    return y_eval(sol_, phi) / (ds * de);
  }

  [[nodiscard]] double phi_of_u(double u) const {
    const double s = std::sin(0.5 * u);
    return sol_.phi0 + delta_ * s * s;
  }

  [[nodiscard]] double t_of_u(double u) const { return t_of_u_(u); }

  /// The unique u in [0, pi] with t(u) = t.
  [[nodiscard]] double u_of_t(double t) const {
    if (t < 0.0 || t > length_) throw Error(ErrorKind::Domain, "t outside [0, l]");
    if (t == 0.0) return 0.0;
    if (t == length_) return std::numbers::pi;
    return find_root_bracketed([&](double u) { return t_of_u_(u) - t; }, 0.0, std::numbers::pi, 4e-16);
  }

  /// Taylor jet of phi(t) to fourth order.
  [[nodiscard]] Jet<4> phi_jet(double t) const {
    const double u = u_of_t(t);
    const double sh = std::sin(0.5 * u), ch = std::cos(0.5 * u);
    const double ds = delta_ * sh * sh, de = delta_ * ch * ch;
    const double q = q_at(ds, de);
    const double phi = sol_.phi0 + ds;
    const double y = ds * de * q;
    const double p1 = delta_ * std::sin(u) * std::sqrt(q) / 2.0;  // phi' = +-sqrt(y), sign of D
    const auto yj = y_eval(sol_, Jet<3>::variable(phi));
    const double y1 = yj.d(1), y2 = yj.d(2), y3 = yj.d(3);
    const double p2 = y1 / 2.0;
    const double p3 = y2 * p1 / 2.0;
    const double p4 = (y3 * y + y2 * y1 / 2.0) / 2.0;
    return Jet<4>::from_derivatives({phi, p1, p2, p3, p4});
  }

  [[nodiscard]] ProfilePoint at(double t) const {
    const Jet<4> phi = phi_jet(t);
    const Jet<3> p = phi.truncate<3>();
    const Jet<3> dp = phi.derivative();
    switch (sol_.kind) {
      case SolutionKind::Chern: return {-0.5 * dp * p, p};
      case SolutionKind::Third: return {0.25 * dp, sqrt(p)};
      case SolutionKind::Critical: return {-1.4 * dp * p, p};
    }
    throw Error(ErrorKind::Domain, "unknown solution kind");
  }

 private:
  using Series = std::array<double, kTaylorOrder + 1>;

  // (y(x0 + d) - y(x0)) / d from the normalized Taylor coefficients at x0.
  static double series_quotient(const Series& c, double d) {
    double r = 0.0;
    for (std::size_t k = kTaylorOrder; k >= 1; --k) r = r * d + c[k];
    return r;
  }

  [[nodiscard]] double integrand(double u) const {
    const double sh = std::sin(0.5 * u), ch = std::cos(0.5 * u);
    const double q = q_at(delta_ * sh * sh, delta_ * ch * ch);
    if (!(q > 0.0)) throw Error(ErrorKind::InvalidSolution, "y is not positive inside the interval");
    return 1.0 / std::sqrt(q);
  }

  // Fixed 30-point Gauss-Legendre panel; the integrand is analytic and the
  // panels are short.
  [[nodiscard]] double panel(double a, double b) const {
    return boost::math::quadrature::gauss<double, 30>::integrate([this](double u) { return integrand(u); }, a, b);
  }

  // t at the Chebyshev nodes by cumulative Gauss-Legendre panels; the degree is
  // doubled until the interpolant reproduces direct quadrature at the
  // midpoints between nodes.
  void build_chebyshev() {
    for (std::size_t n = 32; n <= 1024; n *= 2) {
      std::vector<double> nodes(n + 1);
      for (std::size_t j = 0; j <= n; ++j) {
        nodes[j] = 0.5 * std::numbers::pi * (1.0 - std::cos(std::numbers::pi * static_cast<double>(j) / n));
      }
      nodes.front() = 0.0;
      nodes.back() = std::numbers::pi;
      std::vector<double> t(n + 1, 0.0);
      for (std::size_t j = 1; j <= n; ++j) {
        t[j] = t[j - 1] + panel(nodes[j - 1], nodes[j]);
      }
      std::size_t idx = 0;
      ChebyshevInterpolant cheb(0.0, std::numbers::pi, n, [&](double) { return t[idx++]; });
      double worst = 0.0;
      for (std::size_t j = 0; j < n; j += 3) {
        const double mid = 0.5 * (nodes[j] + nodes[j + 1]);
        const double direct = t[j] + panel(nodes[j], mid);
        worst = std::max(worst, std::abs(cheb(mid) - direct));
      }
      if (worst <= 1e-13 * t[n]) {
        t_of_u_ = std::move(cheb);
        return;
      }
    }
    throw Error(ErrorKind::Accuracy, "t(u) interpolant did not converge");
  }

  // l again, from tanh-sinh on dphi / sqrt(y) with exact endpoint distances.
  void cross_check_length() {
    const double lo = std::min(sol_.phi0, sol_.phi1), hi = std::max(sol_.phi0, sol_.phi1);
    auto fn = [&](double phi, double xc) {
      // xc < 0: phi - lo = -xc; xc > 0: hi - phi = xc.
      const double dlo = xc < 0.0 ? -xc : (hi - lo) - xc;
      const double dhi = xc > 0.0 ? xc : (hi - lo) + xc;
      (void)phi;
      const double ds = delta_ > 0.0 ? dlo : -dhi;
      const double de = delta_ > 0.0 ? dhi : -dlo;
      const double y = ds * de * q_at(ds, de);
      return 1.0 / std::sqrt(y);
    };
    const double l_ts = integrate_endpoint_singular(fn, lo, hi, 1e-12 * length_);
    length_check_ = std::abs(l_ts - length_);
    if (length_check_ > 1e-10 * length_) {
      throw Error(ErrorKind::Accuracy, "profile length disagrees between quadrature routes");
    }
  }

  ClosedFormSolution sol_;
  double delta_ = 0.0;
  double taylor_radius_ = 0.0;
  Series start_{}, end_{};
  ChebyshevInterpolant t_of_u_;
  double length_ = 0.0;
  double length_check_ = 0.0;
};

/// Constructed profile sampled on a uniform grid of n_grid nodes.
inline ProfilePair build_profile(const ClosedFormSolution& sol, std::size_t n_grid = 512) {
  if (n_grid < 64) throw Error(ErrorKind::Grid, "profile grids need at least 64 nodes");
  const HirzebruchProfile p(sol);
  return sample_profile(p, Grid::uniform(0.0, p.length(), n_grid), sol.m);
}

/// f'(0) - m, f'(l) + m, h'(0), h'(l).
struct BoundaryResiduals {
  double df0 = 0.0, dfl = 0.0, dh0 = 0.0, dhl = 0.0;
  [[nodiscard]] double max_abs() const {
    return std::max({std::abs(df0), std::abs(dfl), std::abs(dh0), std::abs(dhl)});
  }
};

/// Endpoint limits of f' and h' by cubic extrapolation from the four nearest
/// interior grid nodes at spacing dt (Richardson on one-sided samples).
template <Profile P>
BoundaryResiduals boundary_residuals(const P& p, int m, double dt) {
  const double l = p.length();
  if (!(dt > 0.0) || 4.0 * dt >= l) throw Error(ErrorKind::Grid, "boundary extrapolation spacing too large");
  auto extrapolate = [](const std::array<double, 4>& v) { return 4 * v[0] - 6 * v[1] + 4 * v[2] - v[3]; };
  std::array<double, 4> f0{}, fl{}, h0{}, hl{};
  for (int k = 0; k < 4; ++k) {
    const auto a = p.at((k + 1) * dt);
    const auto b = p.at(l - (k + 1) * dt);
    f0[k] = a.f.d(1);
    h0[k] = a.h.d(1);
    fl[k] = b.f.d(1);
    hl[k] = b.h.d(1);
  }
  return {extrapolate(f0) - m, extrapolate(fl) + m, extrapolate(h0), extrapolate(hl)};
}

inline BoundaryResiduals boundary_residuals(const ProfilePair& p) {
  if (!p.degree()) throw Error(ErrorKind::Domain, "profile has no degree m");
  return boundary_residuals(p, *p.degree(), p.grid()[1] - p.grid()[0]);
}

/// The scalar that the construction makes constant: s^C, s, or s^C + delta theta.
inline double target_scalar(SolutionKind kind, const ProfilePoint& q) {
  switch (kind) {
    case SolutionKind::Chern: return chern_scalar(q);
    case SolutionKind::Third: return third_scalar(q);
    case SolutionKind::Critical: return gauduchon_combination(q);
  }
  throw Error(ErrorKind::Domain, "unknown solution kind");
}

struct SolveReport {
  BoundaryResiduals boundary;
  double constancy = 0.0;      // max |target - lambda| / |lambda| over interior nodes
  double ode_residual = 0.0;   // max |phi' -+ sqrt(y(phi))| over interior nodes
  bool positive = false;       // y > 0 strictly inside
  std::size_t chebyshev_degree = 0;
  double length_discrepancy = 0.0;
};

/// Checks the construction against its defining properties on the sampled
/// profile: constancy of the target scalar at interior nodes, boundary
/// conditions, and phi' = +-sqrt(y) where phi is h (or h^2 for third).
inline SolveReport verify_profile(const ClosedFormSolution& sol, const ProfilePair& p) {
  SolveReport r;
  r.positive = positivity_check(sol, 1000);
  r.boundary = boundary_residuals(p, sol.m, p.grid()[1] - p.grid()[0]);
  const auto& g = p.grid();
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    const auto q = p.at(g[i]);
    r.constancy = std::max(r.constancy, std::abs(target_scalar(sol.kind, q) - sol.lambda) / std::abs(sol.lambda));
    const Jet<3> phi = sol.kind == SolutionKind::Third ? q.h * q.h : q.h;
    const double expected = sol.direction() * std::sqrt(std::max(0.0, y_eval(sol, phi.value())));
    r.ode_residual = std::max(r.ode_residual, std::abs(phi.d(1) - expected));
  }
  return r;
}

}  // namespace hermitian
