#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hermitian/error.hpp"
#include "hermitian/numerics/grid.hpp"
#include "hermitian/numerics/interpolation.hpp"
#include "hermitian/numerics/jet.hpp"

namespace hermitian {

/// Local data of the U(2)-invariant metric
///   g = h(t)^2 (e1^2 + e2^2) + f(t)^2 e3^2 + dt^2
/// at one value of t: third-order Taylor jets of f and h.
struct ProfilePoint {
  Jet<3> f;
  Jet<3> h;

  static ProfilePoint from_derivatives(const std::array<double, 4>& f, const std::array<double, 4>& h) {
    return {Jet<3>::from_derivatives(f), Jet<3>::from_derivatives(h)};
  }
};

/// Anything that can report the profile jets at a value of t in [0, l].
template <class P>
concept Profile = requires(const P& p, double t) {
  { p.at(t) } -> std::convertible_to<ProfilePoint>;
  { p.length() } -> std::convertible_to<double>;
};

/// Throws unless t lies strictly inside (0, l).
template <Profile P>
void require_interior(const P& p, double t) {
  if (!(t > 0.0 && t < p.length())) {
    throw Error(ErrorKind::Domain, "t = " + std::to_string(t) + " is outside the open interval (0, l)");
  }
}

/// Profile given by closed-form functions of t. Each function is evaluated on
/// a Jet<3> variable, so derivatives come for free.
class AnalyticProfile {
 public:
  using Fn = std::function<Jet<3>(const Jet<3>&)>;

  AnalyticProfile(double length, Fn f, Fn h) : l_(length), f_(std::move(f)), h_(std::move(h)) {
    if (!(length > 0.0)) throw Error(ErrorKind::Domain, "profile length must be positive");
  }

  [[nodiscard]] double length() const noexcept { return l_; }

  [[nodiscard]] ProfilePoint at(double t) const {
    const auto x = Jet<3>::variable(t);
    return {f_(x), h_(x)};
  }

 private:
  double l_;
  Fn f_, h_;
};

/// Constant profile h = f = 1 on (0, l): the standard Hopf-type product
/// metric, used as a fixed reference point for every curvature formula.
inline AnalyticProfile hopf_profile(double length = 1.0) {
  return {length, [](const Jet<3>&) { return Jet<3>(1.0); }, [](const Jet<3>&) { return Jet<3>(1.0); }};
}

/// Sampled profile functions f, h on a grid over [0, l]. This is the
/// representation written to metric files; derivatives are those of the
/// local interpolating polynomial through the nearest samples.
class ProfilePair {
 public:
  ProfilePair() = default;

  ProfilePair(SampledFunction f, SampledFunction h, std::optional<int> degree = std::nullopt)
      : f_(std::move(f)), h_(std::move(h)), m_(degree) {
    const auto& gf = f_.grid();
    const auto& gh = h_.grid();
    if (gf.size() != gh.size()) throw Error(ErrorKind::Grid, "f and h are sampled on different grids");
    for (std::size_t i = 0; i < gf.size(); ++i) {
      if (gf[i] != gh[i]) throw Error(ErrorKind::Grid, "f and h are sampled on different grids");
    }
    if (gf.front() != 0.0) throw Error(ErrorKind::Grid, "profile grid must start at t = 0");
    l_ = gf.back();
    // Positivity on the open interval.
    for (std::size_t i = 1; i + 1 < gf.size(); ++i) {
      if (!(f_[i] > 0.0) || !(h_[i] > 0.0)) {
        throw Error(ErrorKind::InvalidMetric, "f and h must be positive on (0, l)");
      }
    }
  }

  [[nodiscard]] double length() const noexcept { return l_; }
  [[nodiscard]] const Grid& grid() const noexcept { return f_.grid(); }
  [[nodiscard]] const SampledFunction& f() const noexcept { return f_; }
  [[nodiscard]] const SampledFunction& h() const noexcept { return h_; }
  [[nodiscard]] std::optional<int> degree() const noexcept { return m_; }

  [[nodiscard]] ProfilePoint at(double t) const {
    if (t < 0.0 || t > l_) throw Error(ErrorKind::Domain, "t outside [0, l]");
    const auto df = local_polynomial_derivatives(f_, t, 3);
    const auto dh = local_polynomial_derivatives(h_, t, 3);
    return ProfilePoint::from_derivatives({df[0], df[1], df[2], df[3]}, {dh[0], dh[1], dh[2], dh[3]});
  }

 private:
  SampledFunction f_, h_;
  double l_ = 0.0;
  std::optional<int> m_;
};

/// Samples any profile on a grid starting at t = 0.
template <Profile P>
ProfilePair sample_profile(const P& p, const Grid& grid, std::optional<int> degree = std::nullopt) {
  std::vector<double> f(grid.size()), h(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto pt = p.at(grid[i]);
    f[i] = pt.f.value();
    h[i] = pt.h.value();
  }
  return {SampledFunction(grid, std::move(f)), SampledFunction(grid, std::move(h)), degree};
}

}  // namespace hermitian
