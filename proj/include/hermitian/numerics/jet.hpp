#pragma once

// Truncated Taylor arithmetic. A Jet<N> carries the normalized Taylor
// coefficients c[k] = u^(k)(x0) / k! of a scalar function u about some point
// x0, for k = 0..N. Arithmetic on jets propagates derivatives exactly (up to
// rounding), which is how every closed-form expression in this library gets
// differentiated.

#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>

namespace hermitian {

template <std::size_t N>
class Jet {
 public:
  static constexpr std::size_t order = N;

  constexpr Jet() = default;
  constexpr Jet(double value) { c_[0] = value; }  // NOLINT: implicit constant lift

  /// Independent variable x about x0.
  static constexpr Jet variable(double x0) {
    Jet j(x0);
    if constexpr (N >= 1) j.c_[1] = 1.0;
    return j;
  }

  /// Builds a jet from derivative values u(x0), u'(x0), ..., u^(N)(x0).
  static constexpr Jet from_derivatives(const std::array<double, N + 1>& d) {
    Jet j;
    double fact = 1.0;
    for (std::size_t k = 0; k <= N; ++k) {
      if (k > 0) fact *= static_cast<double>(k);
      j.c_[k] = d[k] / fact;
    }
    return j;
  }

  constexpr double value() const { return c_[0]; }
  constexpr double coeff(std::size_t k) const { return c_[k]; }
  constexpr double& coeff(std::size_t k) { return c_[k]; }

  /// k-th derivative at the expansion point.
  constexpr double d(std::size_t k) const {
    double fact = 1.0;
    for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<double>(i);
    return c_[k] * fact;
  }

  /// Derivative as a jet of one order less.
  constexpr Jet<(N > 0 ? N - 1 : 0)> derivative() const
    requires(N > 0)
  {
    Jet<N - 1> r;
    for (std::size_t k = 0; k < N; ++k) r.coeff(k) = static_cast<double>(k + 1) * c_[k + 1];
    return r;
  }

  /// Drops coefficients above order M.
  template <std::size_t M>
  constexpr Jet<M> truncate() const
    requires(M <= N)
  {
    Jet<M> r;
    for (std::size_t k = 0; k <= M; ++k) r.coeff(k) = c_[k];
    return r;
  }

  constexpr Jet operator-() const {
    Jet r;
    for (std::size_t k = 0; k <= N; ++k) r.c_[k] = -c_[k];
    return r;
  }

  constexpr Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k <= N; ++k) c_[k] += o.c_[k];
    return *this;
  }
  constexpr Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k <= N; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  constexpr Jet& operator*=(const Jet& o) { return *this = *this * o; }
  constexpr Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend constexpr Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend constexpr Jet operator-(Jet a, const Jet& b) { return a -= b; }

  friend constexpr Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (std::size_t k = 0; k <= N; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }

  friend constexpr Jet operator/(const Jet& a, const Jet& b) {
    Jet r;
    for (std::size_t k = 0; k <= N; ++k) {
      double s = a.c_[k];
      for (std::size_t j = 0; j < k; ++j) s -= r.c_[j] * b.c_[k - j];
      r.c_[k] = s / b.c_[0];
    }
    return r;
  }

  friend Jet sqrt(const Jet& a) {
    Jet r;
    r.c_[0] = std::sqrt(a.c_[0]);
    for (std::size_t k = 1; k <= N; ++k) {
      double s = a.c_[k];
      for (std::size_t j = 1; j < k; ++j) s -= r.c_[j] * r.c_[k - j];
      r.c_[k] = s / (2.0 * r.c_[0]);
    }
    return r;
  }

  friend Jet exp(const Jet& a) {
    Jet r;
    r.c_[0] = std::exp(a.c_[0]);
    for (std::size_t k = 1; k <= N; ++k) {
      double s = 0.0;
      for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a.c_[j] * r.c_[k - j];
      r.c_[k] = s / static_cast<double>(k);
    }
    return r;
  }

  friend Jet log(const Jet& a) {
    Jet r;
    r.c_[0] = std::log(a.c_[0]);
    for (std::size_t k = 1; k <= N; ++k) {
      double s = static_cast<double>(k) * a.c_[k];
      for (std::size_t j = 1; j < k; ++j) s -= static_cast<double>(j) * r.c_[j] * a.c_[k - j];
      r.c_[k] = s / (static_cast<double>(k) * a.c_[0]);
    }
    return r;
  }

  /// a^p for a real exponent; requires a.value() > 0 unless p is a
  /// non-negative integer.
  friend Jet pow(const Jet& a, double p) {
    Jet r;
    r.c_[0] = std::pow(a.c_[0], p);
    for (std::size_t k = 1; k <= N; ++k) {
      double s = 0.0;
      for (std::size_t j = 1; j <= k; ++j) {
        s += (p * static_cast<double>(j) - static_cast<double>(k - j)) * a.c_[j] * r.c_[k - j];
      }
      r.c_[k] = s / (static_cast<double>(k) * a.c_[0]);
    }
    return r;
  }

  friend Jet sin(const Jet& a) { return sincos(a).first; }
  friend Jet cos(const Jet& a) { return sincos(a).second; }

 private:
  struct SinCos {
    Jet first, second;
  };
  static SinCos sincos(const Jet& a) {
    Jet s, c;
    s.c_[0] = std::sin(a.c_[0]);
    c.c_[0] = std::cos(a.c_[0]);
    for (std::size_t k = 1; k <= N; ++k) {
      double ss = 0.0, cc = 0.0;
      for (std::size_t j = 1; j <= k; ++j) {
        const double ja = static_cast<double>(j) * a.c_[j];
        ss += ja * c.c_[k - j];
        cc -= ja * s.c_[k - j];
      }
      s.c_[k] = ss / static_cast<double>(k);
      c.c_[k] = cc / static_cast<double>(k);
    }
    return {s, c};
  }

  std::array<double, N + 1> c_{};
};

template <class T>
struct is_jet : std::false_type {};
template <std::size_t N>
struct is_jet<Jet<N>> : std::true_type {};

/// Value part of a double or a jet.
template <class T>
constexpr double value_of(const T& x) {
  if constexpr (is_jet<T>::value) {
    return x.value();
  } else {
    return static_cast<double>(x);
  }
}

}  // namespace hermitian
