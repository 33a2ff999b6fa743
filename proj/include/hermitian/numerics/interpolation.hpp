#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "hermitian/error.hpp"
#include "hermitian/numerics/differentiate.hpp"
#include "hermitian/numerics/grid.hpp"
#include "hermitian/numerics/roots.hpp"

namespace hermitian {

/// Index of the stencil of `width` nodes closest to z (clamped at the ends).
inline std::size_t nearest_stencil(std::span<const double> nodes, double z, std::size_t width) {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), z);
  const auto i = static_cast<std::size_t>(std::distance(nodes.begin(), it));
  const std::size_t n = nodes.size();
  const std::size_t half = width / 2;
  if (i < half) return 0;
  if (i + (width - half) > n) return n - width;
  return i - half;
}

/// Value and derivatives 1..max_order of the local interpolating polynomial
/// through the `width` samples nearest z.
inline std::vector<double> local_polynomial_derivatives(const SampledFunction& s, double z, std::size_t max_order,
                                                        std::size_t width = kDefaultStencil + 2) {
  const auto nodes = s.grid().nodes();
  width = std::min(width, nodes.size());
  const std::size_t start = nearest_stencil(nodes, z, width);
  const auto w = fd_weights(z, nodes.subspan(start, width), max_order);
  std::vector<double> out(max_order + 1, 0.0);
  for (std::size_t k = 0; k <= max_order; ++k) {
    for (std::size_t j = 0; j < width; ++j) out[k] += w[k][j] * s[start + j];
  }
  return out;
}

inline double interpolate_local(const SampledFunction& s, double z, std::size_t width = kDefaultStencil) {
  return local_polynomial_derivatives(s, z, 0, width)[0];
}

/// Barycentric interpolant on Chebyshev-Lobatto points of [a, b].
class ChebyshevInterpolant {
 public:
  ChebyshevInterpolant() = default;

  /// Samples fn at n+1 Chebyshev-Lobatto points.
  template <class Fn>
  ChebyshevInterpolant(double a, double b, std::size_t n, Fn&& fn) : a_(a), b_(b) {
    if (n < 2) throw Error(ErrorKind::Grid, "Chebyshev interpolant needs at least 3 points");
    x_.resize(n + 1);
    v_.resize(n + 1);
    w_.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
      const double c = std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
      x_[j] = 0.5 * (a + b) - 0.5 * (b - a) * c;  // increasing
      w_[j] = ((j % 2 == 0) ? 1.0 : -1.0) * ((j == 0 || j == n) ? 0.5 : 1.0);
    }
    x_.front() = a;
    x_.back() = b;
    for (std::size_t j = 0; j <= n; ++j) v_[j] = fn(x_[j]);
  }

  [[nodiscard]] double operator()(double z) const {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < x_.size(); ++j) {
      const double d = z - x_[j];
      if (d == 0.0) return v_[j];
      const double t = w_[j] / d;
      num += t * v_[j];
      den += t;
    }
    return num / den;
  }

  [[nodiscard]] double lower() const noexcept { return a_; }
  [[nodiscard]] double upper() const noexcept { return b_; }
  [[nodiscard]] std::span<const double> nodes() const noexcept { return x_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return v_; }

 private:
  double a_ = 0.0, b_ = 1.0;
  std::vector<double> x_, v_, w_;
};

/// Inverse of strictly monotone samples t_i = T(x_i): returns x(t) sampled
/// on a uniform grid spanning [min t, max t] with as many nodes as the
/// input. Each output node solves T(x) = t against the local polynomial
/// interpolant of the samples, so the round trip is exact to root tolerance.
inline SampledFunction invert_monotone(const SampledFunction& samples) {
  const auto v = samples.values();
  const std::size_t n = v.size();
  const bool increasing = v[n - 1] > v[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (increasing ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1])) {
      throw Error(ErrorKind::Monotonicity, "samples are not strictly monotone");
    }
  }
  const double tmin = std::min(v[0], v[n - 1]);
  const double tmax = std::max(v[0], v[n - 1]);
  const Grid out_grid = Grid::uniform(tmin, tmax, n);
  const auto x = samples.grid().nodes();

  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = out_grid[j];
    // Bracketing sample interval.
    std::size_t i = 0;
    if (increasing) {
      i = static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), t) - v.begin());
    } else {
      i = static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), t, std::greater<>()) - v.begin());
    }
    i = std::clamp<std::size_t>(i, 1, n - 1);
    if (t == v[i - 1]) {
      out[j] = x[i - 1];
      continue;
    }
    if (t == v[i]) {
      out[j] = x[i];
      continue;
    }
    auto resid = [&](double z) { return interpolate_local(samples, z) - t; };
    const double lo = x[i - 1], hi = x[i];
    if (std::signbit(resid(lo)) == std::signbit(resid(hi))) {
      // Local interpolant overshoots; fall back to linear inverse.
      out[j] = lo + (t - v[i - 1]) * (hi - lo) / (v[i] - v[i - 1]);
    } else {
      out[j] = find_root_bracketed(resid, lo, hi, 1e-15 * std::max(1.0, std::abs(hi)));
    }
  }
  return {out_grid, std::move(out)};
}

}  // namespace hermitian
