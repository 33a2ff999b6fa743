#pragma once

// Admissible Kaehler metrics on ruled surfaces P(O + L_m) over a genus g
// curve,
//   g = (1 + xz)/x g_Sigma + (1 + xz)/F(z) dz^2 + F(z)/(1 + xz) theta^2,
// and their conformal rescalings by 1/(z + b)^2. Only the scalar invariant
// s_Sigma of the base enters.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "hermitian/error.hpp"
#include "hermitian/numerics/jet.hpp"
#include "hermitian/numerics/linear.hpp"
#include "hermitian/numerics/roots.hpp"

namespace hermitian {

/// F = (1 - z^2)((1 + xz) - c(1 - z^2)).
struct QuarticF {
  double x = 0.5;
  double c = 0.0;
};

/// F = c1 (z+b)^4 + c2 (z+b) + y_p(z), the general solution of the Euler
/// equation with constant conformal Chern scalar sC.
struct EulerF {
  double x = 0.5;
  double b = 2.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double sC = 0.0;
  double sSigma = 0.0;
};

struct AdmissibleSolution {
  std::optional<int> genus;
  std::optional<int> m;
  double x = 0.5;
  double b = 2.0;
  double sSigma = 0.0;
  double sC = 0.0;
  std::variant<QuarticF, EulerF> F;

  [[nodiscard]] bool is_quartic() const noexcept { return std::holds_alternative<QuarticF>(F); }
};

/// Symmetric interior nodes of (-1, 1): z_i = -1 + 2i/(n+1), i = 1..n.
class MomentumGrid {
 public:
  explicit MomentumGrid(std::size_t n) : z_(n) {
    if (n < 1) throw Error(ErrorKind::Grid, "momentum grid needs at least one node");
    for (std::size_t i = 0; i < n; ++i) {
      // Built from both ends so that z_i == -z_{n-1-i} exactly.
      z_[i] = (static_cast<double>(i + 1) - static_cast<double>(n - i)) / static_cast<double>(n + 1);
    }
  }
  [[nodiscard]] std::size_t size() const noexcept { return z_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return z_[i]; }
  [[nodiscard]] const std::vector<double>& nodes() const noexcept { return z_; }

 private:
  std::vector<double> z_;
};

/// s_Sigma = (2 - 2g)/m as a reduced fraction.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  [[nodiscard]] double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

inline Rational s_sigma_rational(int genus, int m) {
  if (genus < 0) throw Error(ErrorKind::Domain, "genus must be non-negative");
  if (m < 1) throw Error(ErrorKind::Domain, "degree m must be a positive integer");
  std::int64_t num = 2 - 2 * static_cast<std::int64_t>(genus), den = m;
  const std::int64_t g = std::gcd(num, den);
  if (g != 0) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

inline double s_sigma(int genus, int m) { return s_sigma_rational(genus, m).value(); }

template <class T>
T quartic_F(double x, double c, const T& z) {
  const T w = 1.0 - z * z;
  return w * ((1.0 + x * z) - c * w);
}

/// (1 - z^2)(z + 3b)(z + b)/(3b^2 + 1).
template <class T>
T factored_zero_chern_F(double b, const T& z) {
  return (1.0 - z * z) * (z + 3.0 * b) * (z + b) / (3.0 * b * b + 1.0);
}

/// The logarithmic particular solution of the Euler equation.
template <class T>
T euler_particular(const EulerF& p, const T& z) {
  using std::log;
  const T zb = z + p.b;
  if (!(value_of(zb) > 0.0)) throw Error(ErrorKind::Domain, "z + b must be positive");
  return (2.0 / 3.0) * p.x * p.sC * zb * log(zb) +
         (p.x / 18.0) * ((13.0 * p.b + 4.0 * z) * p.sC - 6.0 * p.sSigma * (p.b + 3.0 * z) * zb) - 0.5 * p.sC;
}

template <class T>
T euler_general_F(const EulerF& p, const T& z) {
  const T zb = z + p.b;
  if (!(value_of(zb) > 0.0)) throw Error(ErrorKind::Domain, "z + b must be positive");
  const T zb2 = zb * zb;
  return p.c1 * zb2 * zb2 + p.c2 * zb + euler_particular(p, z);
}

inline double euler_general_F(const EulerF& p, double z) { return euler_general_F<double>(p, z); }

/// (z+b)^2 F'' - 4(z+b) F' + 4F minus 2 sSigma x (z+b)^2 - 2(1+xz) sC.
inline double euler_ode_residual(const EulerF& p, double z) {
  const auto F = euler_general_F(p, Jet<2>::variable(z));
  const double zb = z + p.b;
  const double lhs = zb * zb * F.d(2) - 4.0 * zb * F.d(1) + 4.0 * F.value();
  const double rhs = 2.0 * p.sSigma * p.x * zb * zb - 2.0 * (1.0 + p.x * z) * p.sC;
  return lhs - rhs;
}

template <class T>
T eval_F(const AdmissibleSolution& s, const T& z) {
  return std::visit(
      [&](const auto& r) -> T {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, QuarticF>) {
          return quartic_F(r.x, r.c, z);
        } else {
          return euler_general_F(r, z);
        }
      },
      s.F);
}

/// F, F', F'' at z.
inline std::array<double, 3> F_derivatives(const AdmissibleSolution& s, double z) {
  const auto F = eval_F(s, Jet<2>::variable(z));
  return {F.value(), F.d(1), F.d(2)};
}

namespace detail {
inline void require_open_interval(double z) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::Domain, "z must lie in (-1, 1), got " + std::to_string(z));
}
inline void require_conformal_domain(double z, double b) {
  if (!(z + b > 0.0)) throw Error(ErrorKind::Domain, "conformal factor 1/(z + b)^2 needs z + b > 0");
}
}  // namespace detail

/// Scalar curvature of the admissible Kaehler metric.
inline double admissible_scalar(const AdmissibleSolution& s, double z) {
  detail::require_open_interval(z);
  const auto d = F_derivatives(s, z);
  return (2.0 * s.sSigma * s.x - d[2]) / (1.0 + s.x * z);
}

/// Laplacian -[F p']'/(1 + xz) of p(z); p is evaluated on second-order jets.
inline double admissible_laplacian(const AdmissibleSolution& s, const std::function<Jet<2>(const Jet<2>&)>& p,
                                   double z) {
  detail::require_open_interval(z);
  const auto d = F_derivatives(s, z);
  const auto q = p(Jet<2>::variable(z));
  return -(d[1] * q.d(1) + d[0] * q.d(2)) / (1.0 + s.x * z);
}

/// Chern scalar curvature of (z + b)^{-2} g, in closed form.
inline double conformal_chern(const AdmissibleSolution& s, double z) {
  detail::require_open_interval(z);
  detail::require_conformal_domain(z, s.b);
  const auto d = F_derivatives(s, z);
  const double zb = z + s.b;
  return (2.0 * s.sSigma * s.x * zb * zb - zb * zb * d[2] + 4.0 * zb * d[1] - 4.0 * d[0]) / (2.0 * (1.0 + s.x * z));
}

/// Same quantity through e^{-2f}(s^g/2 + 2 Laplacian f) with f = -ln(z + b).
inline double conformal_chern_composed(const AdmissibleSolution& s, double z) {
  detail::require_open_interval(z);
  detail::require_conformal_domain(z, s.b);
  const double b = s.b;
  const double lap = admissible_laplacian(s, [b](const Jet<2>& w) { return -log(w + b); }, z);
  const double zb = z + b;
  return zb * zb * (0.5 * admissible_scalar(s, z) + 2.0 * lap);
}

/// F(-1), F(1), F'(-1) - 2(1 - x), F'(1) + 2(1 + x).
struct RuledBoundaryResiduals {
  double F_minus = 0.0;
  double F_plus = 0.0;
  double dF_minus = 0.0;
  double dF_plus = 0.0;
  [[nodiscard]] double max_abs() const {
    return std::max({std::abs(F_minus), std::abs(F_plus), std::abs(dF_minus), std::abs(dF_plus)});
  }
};

inline RuledBoundaryResiduals ruled_boundary_residuals(const AdmissibleSolution& s) {
  const auto lo = eval_F(s, Jet<1>::variable(-1.0));
  const auto hi = eval_F(s, Jet<1>::variable(1.0));
  return {lo.value(), hi.value(), lo.d(1) - 2.0 * (1.0 - s.x), hi.d(1) + 2.0 * (1.0 + s.x)};
}

/// True iff F > 0 at every node of MomentumGrid(n_scan).
inline bool check_positivity_F(const AdmissibleSolution& s, int n_scan = 1001) {
  if (n_scan < 1001) throw Error(ErrorKind::Domain, "positivity scan needs at least 1001 nodes");
  const MomentumGrid grid(static_cast<std::size_t>(n_scan));
  for (double z : grid.nodes()) {
    if (!(eval_F(s, z) > 0.0)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Zero conformal Chern scalar.

/// Coefficient equations for the quartic F in the unknowns
/// (x, c, w = sSigma x, sC), at fixed b. Rows are the z^3, z^2, z^1 and z^0
/// equations; the z^1 row is bilinear as written (it carries sC x), and
/// becomes sC = 0 once the z^3 and z^2 rows are used and x != 0 is divided
/// out.
struct LinearSystem4 {
  Eigen::Matrix4d a;
  Eigen::Vector4d rhs;
};

inline LinearSystem4 zero_chern_linear_system(double b) {
  LinearSystem4 s;
  const double b2 = b * b;
  s.a << 2.0, -8.0 * b, 0.0, 0.0,            //
      0.0, -(12.0 * b2 + 4.0), -2.0, 0.0,    //
      0.0, 0.0, 0.0, 1.0,                    //
      -4.0 * b, 4.0 * b2 - 4.0, -2.0 * b2, 2.0;
  s.rhs << 0.0, -2.0, 0.0, 2.0 * b2 - 4.0;
  return s;
}

/// Closed-form zero-Chern solution for b > 1: x = 4b/(3b^2+1),
/// c = 1/(3b^2+1), sSigma = -1/x, sC = 0.
inline AdmissibleSolution solve_zero_chern(double b) {
  if (!(b > 1.0) || !std::isfinite(b)) {
    throw Error(ErrorKind::Domain, "zero-Chern solution needs b > 1, got b = " + std::to_string(b));
  }
  const double d = 3.0 * b * b + 1.0;
  AdmissibleSolution s;
  s.b = b;
  s.x = 4.0 * b / d;
  s.sSigma = -d / (4.0 * b);
  s.sC = 0.0;
  s.F = QuarticF{s.x, 1.0 / d};
  return s;
}

/// (x, c, sSigma x, sC) from the linear system, via the dense solver.
inline Eigen::Vector4d solve_zero_chern_linear(double b) {
  const auto sys = zero_chern_linear_system(b);
  const Eigen::VectorXd v = solve_linear(sys.a, sys.rhs);
  return v;
}

/// The root b > 1 of 3x b^2 - 4b + x = 0 with x = m/(2g - 2).
inline double admissible_b_for_degree(int genus, int m) {
  if (m < 1) throw Error(ErrorKind::Domain, "degree m must be a positive integer");
  if (genus < 2) throw Error(ErrorKind::DegreeBound, "zero Chern scalar needs genus >= 2");
  if (m > 2 * genus - 2) {
    throw Error(ErrorKind::DegreeBound, "degree m = " + std::to_string(m) + " exceeds 2g - 2 = " +
                                            std::to_string(2 * genus - 2));
  }
  const double x = static_cast<double>(m) / (2.0 * genus - 2.0);
  const double disc = 16.0 - 12.0 * x * x;
  // Larger root, written to avoid cancellation: b = (4 + sqrt(disc))/(6x).
  const double b = (4.0 + std::sqrt(disc)) / (6.0 * x);
  if (!(b > 1.0)) {
    throw Error(ErrorKind::DegreeBound, "x = 1 gives b = 1, where F positivity fails; need m < 2g - 2");
  }
  return b;
}

inline AdmissibleSolution solve_zero_chern_for_degree(int genus, int m) {
  auto s = solve_zero_chern(admissible_b_for_degree(genus, m));
  s.genus = genus;
  s.m = m;
  return s;
}

// ---------------------------------------------------------------------------
// Constant conformal Chern scalar with the Euler-equation F.

struct ClosedFormCoefficients {
  double sC = 0.0;
  double sSigma = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Coefficients in terms of x and b that make the Euler F satisfy all four
/// boundary conditions.
inline ClosedFormCoefficients closed_form_coefficients(double x, double b) {
  if (!(b > 1.0)) throw Error(ErrorKind::Domain, "b must exceed 1");
  if (!(x > 0.0 && x < 1.0)) throw Error(ErrorKind::Domain, "x must lie in (0, 1)");
  const double b2 = b * b, b3 = b2 * b, b4 = b2 * b2;
  const double q = b2 - 1.0;
  const double lm = std::log(b - 1.0), lp = std::log(b + 1.0);
  const double L = std::log((b - 1.0) / (b + 1.0));
  const double A = 3.0 * b * x * q * q * L + 6.0 * b4 * x - 16.0 * b2 * x + 12.0 * b - 2.0 * x;
  const double scale = 12.0 * b + 16.0 * b2 + 6.0 * b4;
  if (!std::isfinite(A) || std::abs(A) <= 1e-14 * scale) {
    throw Error(ErrorKind::Degeneracy, "A vanishes at x = " + std::to_string(x) + ", b = " + std::to_string(b));
  }
  ClosedFormCoefficients r;
  r.sC = -6.0 * q * (3.0 * b2 * x - 4.0 * b + x) / A;
  r.sSigma = (-3.0 * x * q * (b3 - 3.0 * b2 * x + 3.0 * b - x) * L + (18.0 * b3 + 6.0 * b) * x * x +
              (-6.0 * b4 - 26.0 * b2 - 4.0) * x + 12.0 * b) /
             (x * A);
  r.c1 = x * ((b3 - b2 * x - b + x) * lp - (b3 - b2 * x - b + x) * lm - 2.0 * b2 + 3.0 * b * x - 1.0) / A;
  r.c2 = (6.0 * x * q *
              ((b3 * x + 3.0 * b2 * x - (x + 4.0) * b + x) * lm - (b3 * x - 3.0 * b2 * x + (4.0 - x) * b - x) * lp) +
          (48.0 * b4 - 20.0 * b2 - 4.0) * x * x + (12.0 * b - 84.0 * b3) * x + 48.0 * b2) /
         (3.0 * A);
  return r;
}

inline EulerF euler_params(double x, double b, const ClosedFormCoefficients& k) {
  return {x, b, k.c1, k.c2, k.sC, k.sSigma};
}

/// Solution assembled from closed_form_coefficients at (x, b).
inline AdmissibleSolution euler_solution(double x, double b) {
  const auto k = closed_form_coefficients(x, b);
  AdmissibleSolution s;
  s.x = x;
  s.b = b;
  s.sSigma = k.sSigma;
  s.sC = k.sC;
  s.F = euler_params(x, b, k);
  return s;
}

/// (c1, c2, sC, sSigma) from the four boundary conditions, solved as a
/// linear system; an independent route to closed_form_coefficients.
inline ClosedFormCoefficients boundary_linear_coefficients(double x, double b) {
  Eigen::MatrixXd a(4, 4);
  Eigen::VectorXd rhs(4);
  const std::array<EulerF, 4> unit = {EulerF{x, b, 1, 0, 0, 0}, EulerF{x, b, 0, 1, 0, 0}, EulerF{x, b, 0, 0, 1, 0},
                                      EulerF{x, b, 0, 0, 0, 1}};
  for (int j = 0; j < 4; ++j) {
    const auto lo = euler_general_F(unit[j], Jet<1>::variable(-1.0));
    const auto hi = euler_general_F(unit[j], Jet<1>::variable(1.0));
    a(0, j) = lo.value();
    a(1, j) = hi.value();
    a(2, j) = lo.d(1);
    a(3, j) = hi.d(1);
  }
  rhs << 0.0, 0.0, 2.0 * (1.0 - x), -2.0 * (1.0 + x);
  const Eigen::VectorXd v = solve_linear(a, rhs);
  return {v(2), v(3), v(0), v(1)};
}

/// Every x in (0, 1) with sSigma(x, b) = (2 - 2g)/m, found by a 500-step
/// scan over (1e-3, 1 - 1e-3) and refinement. Poles of sSigma (A = 0) are
/// discarded. Positivity of F is not checked here.
inline std::vector<AdmissibleSolution> solve_x_for_genus_all(int genus, int m, double b) {
  const double target = s_sigma(genus, m);
  if (!(b > 1.0)) throw Error(ErrorKind::Domain, "b must exceed 1");
  auto g = [&](double x) {
    try {
      return closed_form_coefficients(x, b).sSigma - target;
    } catch (const Error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  constexpr int kSteps = 500;
  std::vector<double> xs(kSteps + 1);
  for (int i = 0; i <= kSteps; ++i) xs[i] = 1e-3 + (1.0 - 2e-3) * i / kSteps;
  std::vector<AdmissibleSolution> out;
  for (const auto& [lo, hi] : sign_change_brackets(g, xs)) {
    double x = 0.0;
    try {
      x = find_root_bracketed(g, lo, hi, 1e-15);
    } catch (const Error&) {
      continue;
    }
    const double scale = std::max(1.0, std::abs(target));
    if (!(std::abs(g(x)) <= 1e-8 * scale)) continue;
    auto s = euler_solution(x, b);
    s.genus = genus;
    s.m = m;
    s.sSigma = target;
    std::get<EulerF>(s.F).sSigma = target;
    out.push_back(s);
  }
  return out;
}

/// The first root of solve_x_for_genus_all whose F is positive on (-1, 1).
inline AdmissibleSolution solve_x_for_genus(int genus, int m, double b) {
  const auto all = solve_x_for_genus_all(genus, m, b);
  if (all.empty()) {
    throw Error(ErrorKind::NoSolution, "no x in (0, 1) gives s_Sigma = " + std::to_string(s_sigma(genus, m)) +
                                           " at b = " + std::to_string(b));
  }
  for (const auto& s : all) {
    if (check_positivity_F(s, 1001)) return s;
  }
  throw Error(ErrorKind::InvalidMetric, "F fails to be positive on (-1, 1) for every root x");
}

}  // namespace hermitian
