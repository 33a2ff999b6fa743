#pragma once

// Conformal changes g~ = e^{2u} g of the ansatz metric in complex dimension
// n = 2, with u = u(t). The rescaled metric is again of ansatz form in the
// arclength t~ = int e^u dt, with h~ = e^u h and f~ = e^u f.
//
// Volume integrals use the density h^2 f dt; the constant volume of the
// orbit directions is taken to be 1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "hermitian/error.hpp"
#include "hermitian/geometry/curvature.hpp"
#include "hermitian/geometry/profile.hpp"
#include "hermitian/numerics/grid.hpp"
#include "hermitian/numerics/interpolation.hpp"
#include "hermitian/numerics/jet.hpp"
#include "hermitian/numerics/roots.hpp"

namespace hermitian {

/// A function of t with its first three derivatives, closed-form
/// (evaluated on jets), sampled, or a combination of those.
class ScalarField {
 public:
  using Fn = std::function<Jet<3>(const Jet<3>&)>;

  explicit ScalarField(Fn fn) : at_([fn = std::move(fn)](double t) { return fn(Jet<3>::variable(t)); }) {}

  explicit ScalarField(SampledFunction s)
      : at_([s = std::move(s)](double t) {
          const auto d = local_polynomial_derivatives(s, t, 3);
          return Jet<3>::from_derivatives({d[0], d[1], d[2], d[3]});
        }) {}

  static ScalarField constant(double c) {
    return ScalarField([c](const Jet<3>&) { return Jet<3>(c); });
  }

  /// a + s b.
  static ScalarField combination(const ScalarField& a, double s, const ScalarField& b) {
    ScalarField out;
    out.at_ = [a, s, b](double t) { return a.at(t) + s * b.at(t); };
    return out;
  }

  [[nodiscard]] Jet<3> at(double t) const { return at_(t); }
  [[nodiscard]] double value(double t) const { return at_(t).value(); }

 private:
  ScalarField() = default;
  std::function<Jet<3>(double)> at_;
};

/// Exponent u of the conformal factor e^{2u}.
using ConformalFactor = ScalarField;

/// Laplacian -(h^2 f)^{-1} (h^2 f p')' of a function of t.
inline double ansatz_laplacian(const ProfilePoint& q, const Jet<3>& p) {
  const double f = q.f.value(), h = q.h.value();
  const double log_density_1 = 2.0 * q.h.d(1) / h + q.f.d(1) / f;
  return -(p.d(2) + log_density_1 * p.d(1));
}

namespace detail {

using Gauss30 = boost::math::quadrature::gauss<double, 30>;

/// Sum of 30-point Gauss-Legendre rules over n equal panels of [a, b].
template <class Fn>
double composite_gauss(Fn&& fn, double a, double b, std::size_t panels) {
  const double w = (b - a) / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    const double lo = a + w * static_cast<double>(i);
    const double hi = i + 1 == panels ? b : lo + w;
    sum += Gauss30::integrate(fn, lo, hi);
  }
  return sum;
}

}  // namespace detail

/// The map t -> t~ together with the rescaled profile sampled on a uniform
/// t~ grid.
class ConformalRescaling {
 public:
  static constexpr std::size_t kPanels = 256;

  template <Profile P>
  ConformalRescaling(const P& p, ConformalFactor u, std::size_t n_grid, std::optional<int> degree = std::nullopt)
      : u_(std::move(u)), l_(p.length()) {
    if (n_grid < Grid::kMinNodes) throw Error(ErrorKind::Grid, "rescaled grid needs at least 8 nodes");
    const double w = l_ / kPanels;
    cumulative_.assign(kPanels + 1, 0.0);
    for (std::size_t i = 0; i < kPanels; ++i) {
      cumulative_[i + 1] = cumulative_[i] + panel(w * static_cast<double>(i), panel_end(i));
    }
    const double lt = cumulative_.back();
    if (!(lt > 0.0) || !std::isfinite(lt)) throw Error(ErrorKind::Evaluation, "rescaled length is not finite");

    const Grid grid = Grid::uniform(0.0, lt, n_grid);
    std::vector<double> f(n_grid), h(n_grid);
    for (std::size_t j = 0; j < n_grid; ++j) {
      const double t = j == 0 ? 0.0 : j + 1 == n_grid ? l_ : t_of(grid[j]);
      const auto q = p.at(t);
      const double s = std::exp(u_.value(t));
      f[j] = s * q.f.value();
      h[j] = s * q.h.value();
    }
    profile_ = ProfilePair(SampledFunction(grid, std::move(f)), SampledFunction(grid, std::move(h)), degree);
  }

  [[nodiscard]] const ProfilePair& profile() const noexcept { return profile_; }
  [[nodiscard]] const ConformalFactor& factor() const noexcept { return u_; }

  /// t~ at t.
  [[nodiscard]] double t_tilde(double t) const {
    if (t < 0.0 || t > l_) throw Error(ErrorKind::Domain, "t outside [0, l]");
    const double w = l_ / kPanels;
    auto i = static_cast<std::size_t>(t / w);
    if (i >= kPanels) i = kPanels - 1;
    return cumulative_[i] + panel(w * static_cast<double>(i), t);
  }

  /// Inverse of t_tilde.
  [[nodiscard]] double t_of(double tt) const {
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), tt);
    std::size_t i = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    if (i >= kPanels) i = kPanels - 1;
    const double w = l_ / kPanels;
    const double lo = w * static_cast<double>(i), hi = panel_end(i);
    const double base = cumulative_[i];
    return find_root_bracketed([&](double t) { return base + panel(lo, t) - tt; }, lo, hi, 1e-15 * l_);
  }

 private:
  [[nodiscard]] double panel_end(std::size_t i) const { return i + 1 == kPanels ? l_ : l_ / kPanels * (i + 1.0); }

  [[nodiscard]] double panel(double a, double b) const {
    if (a == b) return 0.0;
    return detail::Gauss30::integrate([this](double t) { return std::exp(u_.value(t)); }, a, b);
  }

  ConformalFactor u_;
  double l_;
  std::vector<double> cumulative_;
  ProfilePair profile_;
};

/// Profile of e^{2u} g on a uniform grid in its own arclength.
template <Profile P>
ProfilePair conformal_rescale_profile(const P& p, const ConformalFactor& u, std::size_t n_grid = 512,
                                      std::optional<int> degree = std::nullopt) {
  return ConformalRescaling(p, u, n_grid, degree).profile();
}

inline ProfilePair conformal_rescale_profile(const ProfilePair& p, const ConformalFactor& u) {
  return ConformalRescaling(p, u, p.grid().size(), p.degree()).profile();
}

struct CovariancePair {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = e^{2u}(s~^C + delta~ theta~) on the rescaled profile at t~(t);
/// rhs = (s^C + delta theta) + 4 Laplacian(u) - 4 |du|^2 on the original.
template <Profile P>
CovariancePair gauduchon_conformal_covariance(const P& p, const ConformalRescaling& r, double t) {
  require_interior(p, t);
  const auto u = r.factor().at(t);
  const double lhs = std::exp(2.0 * u.value()) * gauduchon_combination(r.profile(), r.t_tilde(t));
  const auto q = p.at(t);
  const double rhs = gauduchon_combination(q) + 4.0 * ansatz_laplacian(q, u) - 4.0 * u.d(1) * u.d(1);
  return {lhs, rhs};
}

template <Profile P>
CovariancePair gauduchon_conformal_covariance(const P& p, const ConformalFactor& u, double t,
                                              std::size_t n_grid = 512) {
  return gauduchon_conformal_covariance(p, ConformalRescaling(p, u, n_grid), t);
}

/// lambda phi^3 - (s^C + delta theta) phi - 4 Laplacian(phi) at t.
template <Profile P>
double yamabe_residual(const P& p, const ScalarField& phi, double lambda, double t) {
  require_interior(p, t);
  const auto v = phi.at(t);
  if (!(v.value() > 0.0)) throw Error(ErrorKind::Domain, "phi must be positive");
  const auto q = p.at(t);
  return lambda * v.value() * v.value() * v.value() - gauduchon_combination(q) * v.value() -
         4.0 * ansatz_laplacian(q, v);
}

/// E(phi) = int (4 |grad phi|^2 + (s^C + delta theta) phi^2) dv / (int phi^4 dv)^{1/2},
/// by composite Gauss-Legendre in t.
template <Profile P>
double functional_E(const P& p, const ScalarField& phi, std::size_t panels = 64) {
  const double l = p.length();
  const double num = detail::composite_gauss(
      [&](double t) {
        const auto q = p.at(t);
        const auto v = phi.at(t);
        const double dv = q.h.value() * q.h.value() * q.f.value();
        return (4.0 * v.d(1) * v.d(1) + gauduchon_combination(q) * v.value() * v.value()) * dv;
      },
      0.0, l, panels);
  const double den = detail::composite_gauss(
      [&](double t) {
        const auto q = p.at(t);
        const double v = phi.value(t);
        return v * v * v * v * q.h.value() * q.h.value() * q.f.value();
      },
      0.0, l, panels);
  if (!(den > 0.0) || !std::isfinite(den)) throw Error(ErrorKind::Domain, "degenerate denominator in E");
  return num / std::sqrt(den);
}

/// int h^2 f dt.
template <Profile P>
double ansatz_volume(const P& p, std::size_t panels = 64) {
  return detail::composite_gauss(
      [&](double t) {
        const auto q = p.at(t);
        return q.h.value() * q.h.value() * q.f.value();
      },
      0.0, p.length(), panels);
}

/// dE/d eps at phi + eps psi by central difference.
template <Profile P>
double functional_E_variation(const P& p, const ScalarField& phi, const ScalarField& psi, double eps = 1e-4,
                              std::size_t panels = 64) {
  auto shifted = [&](double s) { return ScalarField::combination(phi, s, psi); };
  return (functional_E(p, shifted(eps), panels) - functional_E(p, shifted(-eps), panels)) / (2.0 * eps);
}

}  // namespace hermitian
