#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "hermitian/error.hpp"
#include "hermitian/numerics/grid.hpp"

namespace hermitian {

/// Finite-difference weights for derivatives 0..max_order at z over the
/// given nodes (Fornberg's recursion, valid on non-uniform nodes).
/// Result is indexed [order][node].
inline std::vector<std::vector<double>> fd_weights(double z, std::span<const double> x, std::size_t max_order) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

/// Start index of the `width`-point stencil nearest to node i, shifted
/// inward at the ends.
inline std::size_t stencil_start(std::size_t i, std::size_t n, std::size_t width) {
  const std::size_t half = width / 2;
  if (i < half) return 0;
  if (i + (width - half) > n) return n - width;
  return i - half;
}

/// Default stencil: 9 points, i.e. 8th order for the first derivative in the
/// interior, exact on polynomials of degree <= 8 everywhere.
inline constexpr std::size_t kDefaultStencil = 9;

/// Derivative of order 1..3 of sampled data, by high-order finite
/// differences. Centered stencils in the interior, one-sided (same width)
/// near the ends. The third derivative uses two extra points. Interior
/// accuracy is O(h^8) for every order.
inline SampledFunction differentiate(const SampledFunction& samples, int order,
                                     std::size_t stencil = kDefaultStencil) {
  if (order < 1 || order > 3) throw Error(ErrorKind::Domain, "derivative order must be 1, 2 or 3");
  if (order == 3) stencil += 2;
  const auto& grid = samples.grid();
  const std::size_t n = grid.size();
  if (stencil < static_cast<std::size_t>(order) + 1 || n < stencil) {
    throw Error(ErrorKind::Grid, "too few nodes for the finite-difference stencil");
  }
  const auto nodes = grid.nodes();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t s = stencil_start(i, n, stencil);
    const auto w = fd_weights(nodes[i], nodes.subspan(s, stencil), static_cast<std::size_t>(order));
    double acc = 0.0;
    for (std::size_t j = 0; j < stencil; ++j) acc += w[static_cast<std::size_t>(order)][j] * samples[s + j];
    out[i] = acc;
  }
  return {grid, std::move(out)};
}

}  // namespace hermitian
