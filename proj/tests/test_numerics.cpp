#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "hermitian/error.hpp"
#include "hermitian/numerics/differentiate.hpp"
#include "hermitian/numerics/grid.hpp"
#include "hermitian/numerics/interpolation.hpp"
#include "hermitian/numerics/jet.hpp"
#include "hermitian/numerics/linear.hpp"
#include "hermitian/numerics/quadrature.hpp"
#include "hermitian/numerics/roots.hpp"

using namespace hermitian;

namespace {

double chern_ratio_poly_m1(double x) { return 3 * x * x * x * x - x * x * x - 3 * x * x - 3 * x - 1; }

// Plain bisection, the independent oracle for the root finder.
double bisect(double (*fn)(double), double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((fn(lo) < 0) == (fn(mid) < 0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(Roots, SquareRootOfFour) {
  EXPECT_NEAR(find_root_bracketed([](double x) { return x * x - 4; }, 1.0, 3.0, 1e-12), 2.0, 1e-12);
}

TEST(Roots, LinearFunction) {
  EXPECT_NEAR(find_root_bracketed([](double x) { return x - 1; }, 0.5, 2.0, 1e-14), 1.0, 1e-14);
}

TEST(Roots, ChernRatioPolynomialAgainstBisection) {
  const double oracle = bisect(chern_ratio_poly_m1, 1.0, 2.0);
  // Frozen from the bisection oracle above.
  EXPECT_NEAR(oracle, 1.5195303702881162, 1e-15);
  const double x = find_root_bracketed(chern_ratio_poly_m1, 1.0, 2.0, 1e-13);
  EXPECT_NEAR(x, oracle, 1e-12);
}

TEST(Roots, IsDeterministic) {
  const double a = find_root_bracketed(chern_ratio_poly_m1, 1.0, 2.0, 1e-9);
  const double b = find_root_bracketed(chern_ratio_poly_m1, 1.0, 2.0, 1e-9);
  EXPECT_EQ(std::bit_cast<std::uint64_t>(a), std::bit_cast<std::uint64_t>(b));
}

TEST(Roots, Errors) {
  try {
    find_root_bracketed([](double x) { return x * x + 1; }, -1.0, 1.0, 1e-10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Bracket);
  }
  try {
    find_root_bracketed([](double x) { return x > 0.3 ? std::nan("") : x - 0.5; }, 0.0, 1.0, 1e-10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Evaluation);
  }
}

TEST(Linear, IdentityAndDiagonal) {
  const Eigen::VectorXd x = solve_linear(Eigen::MatrixXd::Identity(4, 4), Eigen::Vector4d(1, 2, 3, 4));
  EXPECT_TRUE(x.isApprox(Eigen::Vector4d(1, 2, 3, 4)));
  Eigen::Matrix2d d;
  d << 2, 0, 0, 4;
  const Eigen::VectorXd y = solve_linear(d, Eigen::Vector2d(2, 8));
  EXPECT_DOUBLE_EQ(y(0), 1.0);
  EXPECT_DOUBLE_EQ(y(1), 2.0);
}

TEST(Linear, SingularMatrixIsRejected) {
  Eigen::Matrix2d s;
  s << 1, 2, 2, 4;
  try {
    solve_linear(s, Eigen::Vector2d(1, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Degeneracy);
  }
  EXPECT_THROW(solve_linear(Eigen::MatrixXd::Identity(9, 9), Eigen::VectorXd::Ones(9)), Error);
}

TEST(Quadrature, InverseSqrtEndpoint) {
  EXPECT_NEAR(integrate_endpoint_singular([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-12), 2.0,
              1e-12);
}

TEST(Quadrature, ArcsineDensity) {
  const double q = integrate_endpoint_singular(
      [](double x, double xc) {
        // 1 - x^2 = (1 - x)(1 + x) with the endpoint distance taken exactly.
        const double dl = xc < 0 ? -xc : 1.0 + x;
        const double dr = xc > 0 ? xc : 1.0 - x;
        return 1.0 / std::sqrt(dl * dr);
      },
      -1.0, 1.0, 1e-12);
  EXPECT_NEAR(q, std::numbers::pi, 1e-12);
}

TEST(Quadrature, BetaHalfHalfWithinTolerance) {
  for (double tol : {1e-6, 1e-9, 1e-12}) {
    const double q = integrate_endpoint_singular(
        [](double x, double xc) {
          const double dl = xc < 0 ? -xc : x;
          const double dr = xc > 0 ? xc : 1.0 - x;
          return 1.0 / std::sqrt(dl * dr);
        },
        0.0, 1.0, tol);
    EXPECT_LE(std::abs(q - std::numbers::pi), tol);
  }
}

TEST(Interpolation, InvertLinear) {
  const auto s = SampledFunction::sample(Grid::uniform(0.0, 1.0, 64), [](double p) { return 2 * p; });
  const auto inv = invert_monotone(s);
  EXPECT_DOUBLE_EQ(inv.grid().back(), 2.0);
  for (std::size_t i = 0; i < inv.size(); ++i) EXPECT_NEAR(inv[i], inv.grid()[i] / 2, 1e-14);
}

TEST(Interpolation, InvertCube) {
  const auto s = SampledFunction::sample(Grid::uniform(1.0, 2.0, 128), [](double p) { return p * p * p; });
  const auto inv = invert_monotone(s);
  const double range = 7.0;
  for (std::size_t i = 0; i < inv.size(); ++i) {
    EXPECT_NEAR(inv[i], std::cbrt(inv.grid()[i]), 1e-12);
    EXPECT_LE(std::abs(inv[i] * inv[i] * inv[i] - inv.grid()[i]), 1e-9 * range);
  }
}

TEST(Interpolation, InvertDecreasingAndRejectNonMonotone) {
  const auto s = SampledFunction::sample(Grid::uniform(0.0, 1.0, 50), [](double p) { return std::exp(-p); });
  const auto inv = invert_monotone(s);
  for (std::size_t i = 0; i < inv.size(); ++i) EXPECT_NEAR(inv[i], -std::log(inv.grid()[i]), 1e-11);

  const auto bump = SampledFunction::sample(Grid::uniform(0.0, 3.0, 50), [](double p) { return std::sin(p); });
  try {
    invert_monotone(bump);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Monotonicity);
  }
}

TEST(Differentiate, SineAt256Nodes) {
  const auto s = SampledFunction::sample(Grid::uniform(0.0, std::numbers::pi, 256), [](double x) { return std::sin(x); });
  const auto d1 = differentiate(s, 1);
  const auto d2 = differentiate(s, 2);
  const auto d3 = differentiate(s, 3);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = s.grid()[i];
    EXPECT_NEAR(d1[i], std::cos(x), 1e-8);
    EXPECT_NEAR(d2[i], -std::sin(x), 1e-6);
    EXPECT_NEAR(d3[i], -std::cos(x), 1e-4);
  }
}

TEST(Differentiate, ConstantHasZeroSecondDerivative) {
  const auto s = SampledFunction::sample(Grid::uniform(-1.0, 1.0, 32), [](double) { return 3.25; });
  const auto d2 = differentiate(s, 2);
  for (double v : d2.values()) EXPECT_NEAR(v, 0.0, 1e-9);
}

TEST(Differentiate, ExactOnAntiderivativesOfDegreeSixPolynomials) {
  // p(x) = sum a_k x^k (k <= 5); P its antiderivative has degree 6.
  const std::vector<double> a = {0.3, -1.2, 0.7, 2.0, -0.4, 0.25};
  auto p = [&](double x) {
    double s = 0, xp = 1;
    for (double c : a) {
      s += c * xp;
      xp *= x;
    }
    return s;
  };
  auto anti = [&](double x) {
    double s = 0, xp = x;
    for (std::size_t k = 0; k < a.size(); ++k) {
      s += a[k] * xp / static_cast<double>(k + 1);
      xp *= x;
    }
    return s;
  };
  for (auto grid : {Grid::uniform(-1.0, 1.5, 40), Grid::clustered(-1.0, 1.5, 40)}) {
    const auto d = differentiate(SampledFunction::sample(grid, anti), 1);
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(d[i], p(grid[i]), 1e-10);
  }
}

TEST(Differentiate, TooFewNodes) {
  const auto s = SampledFunction::sample(Grid::uniform(0.0, 1.0, 8), [](double x) { return x; });
  try {
    differentiate(s, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Grid);
  }
  EXPECT_NO_THROW(differentiate(s, 1, 7));
}

TEST(GridTypes, Invariants) {
  EXPECT_THROW(Grid(std::vector<double>{0, 1, 2}), Error);
  EXPECT_THROW(Grid(std::vector<double>{0, 1, 2, 3, 4, 5, 7, 6}), Error);
  EXPECT_THROW(SampledFunction(Grid::uniform(0, 1, 8), std::vector<double>(7, 0.0)), Error);
}

TEST(Jets, ElementaryFunctionsMatchAnalyticDerivatives) {
  const auto x = Jet<4>::variable(0.7);
  const auto e = exp(sin(x)) / sqrt(1.0 + x * x);
  // d/dx of exp(sin x)/sqrt(1+x^2) by hand.
  const double v = std::exp(std::sin(0.7)) / std::sqrt(1.49);
  const double d1 = v * (std::cos(0.7) - 0.7 / 1.49);
  EXPECT_NEAR(e.value(), v, 1e-15);
  EXPECT_NEAR(e.d(1), d1, 1e-14);
  const auto p = pow(x, 2.5);
  EXPECT_NEAR(p.d(3), 2.5 * 1.5 * 0.5 * std::pow(0.7, -0.5), 1e-13);
  const auto l = log(x);
  EXPECT_NEAR(l.d(4), -6.0 / std::pow(0.7, 4), 1e-11);
}
