#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hermitian/error.hpp"

namespace hermitian {

enum class GridKind { Uniform, Clustered };

/// Strictly increasing abscissae, at least kMinNodes of them.
class Grid {
 public:
  static constexpr std::size_t kMinNodes = 8;

  Grid() = default;

  explicit Grid(std::vector<double> nodes, GridKind kind = GridKind::Uniform)
      : nodes_(std::move(nodes)), kind_(kind) {
    if (nodes_.size() < kMinNodes) {
      throw Error(ErrorKind::Grid, "grid needs at least 8 nodes, got " + std::to_string(nodes_.size()));
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!std::isfinite(nodes_[i])) throw Error(ErrorKind::Grid, "non-finite grid node");
      if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
        throw Error(ErrorKind::Grid, "grid nodes must be strictly increasing");
      }
    }
  }

  static Grid uniform(double a, double b, std::size_t n) {
    if (n < kMinNodes) throw Error(ErrorKind::Grid, "grid needs at least 8 nodes");
    std::vector<double> x(n);
    const double h = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) x[i] = a + h * static_cast<double>(i);
    x.back() = b;
    return Grid(std::move(x), GridKind::Uniform);
  }

  /// Chebyshev-Lobatto points mapped to [a, b], increasing.
  static Grid clustered(double a, double b, std::size_t n) {
    if (n < kMinNodes) throw Error(ErrorKind::Grid, "grid needs at least 8 nodes");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double c = -std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
      x[i] = 0.5 * (a + b) + 0.5 * (b - a) * c;
    }
    x.front() = a;
    x.back() = b;
    return Grid(std::move(x), GridKind::Clustered);
  }

  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return nodes_[i]; }
  [[nodiscard]] double front() const { return nodes_.front(); }
  [[nodiscard]] double back() const { return nodes_.back(); }
  [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
  [[nodiscard]] GridKind kind() const noexcept { return kind_; }

 private:
  std::vector<double> nodes_;
  GridKind kind_ = GridKind::Uniform;
};

/// Finite samples of a function on a grid.
class SampledFunction {
 public:
  SampledFunction() = default;

  SampledFunction(Grid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw Error(ErrorKind::Grid, "sample count does not match grid size");
    }
    for (double v : values_) {
      if (!std::isfinite(v)) throw Error(ErrorKind::Evaluation, "non-finite sample value");
    }
  }

  template <class Fn>
  static SampledFunction sample(const Grid& grid, Fn&& fn) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = fn(grid[i]);
    return {grid, std::move(v)};
  }

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

 private:
  Grid grid_;
  std::vector<double> values_;
};

}  // namespace hermitian
