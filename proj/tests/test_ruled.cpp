#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hermitian/ruled/admissible.hpp"

using namespace hermitian;

namespace {

struct TableRow {
  int genus, m;
  double b, x, c1, c2, sC;
};

// The three published rows; genus 1 rows hold for any m > 0.
constexpr TableRow kRows[] = {
    {1, 1, 2.0, 0.45128, -0.04980, -0.13414, 3.56671},
    {2, 1, 2.0, 0.63961, -0.08279, 0.81380, -1.08112},
    {2, 1, 3.0, 0.41604, -0.03399, -0.24254, 1.48367},
};

double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

}  // namespace

TEST(SSigma, RationalIdentity) {
  EXPECT_EQ(s_sigma_rational(0, 1), (Rational{2, 1}));
  EXPECT_EQ(s_sigma_rational(1, 5), (Rational{0, 1}));
  EXPECT_EQ(s_sigma_rational(2, 1), (Rational{-2, 1}));
  EXPECT_EQ(s_sigma_rational(3, 2), (Rational{-2, 1}));
  EXPECT_EQ(s_sigma_rational(4, 4), (Rational{-3, 2}));
  EXPECT_EQ(s_sigma_rational(5, 6), (Rational{-4, 3}));
  for (int g = 0; g < 8; ++g)
    for (int m = 1; m < 10; ++m) {
      const auto r = s_sigma_rational(g, m);
      EXPECT_EQ(r.num * m, (2 - 2 * g) * r.den);
      EXPECT_LE(s_sigma(g, m), 2.0);
    }
  EXPECT_THROW((void)s_sigma_rational(1, 0), Error);
}

TEST(MomentumGrid, SymmetricInterior) {
  const MomentumGrid g(1001);
  EXPECT_EQ(g.size(), 1001u);
  EXPECT_GT(g[0], -1.0);
  EXPECT_LT(g[1000], 1.0);
  EXPECT_EQ(g[500], 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g[i], -g[g.size() - 1 - i]);
}

TEST(AdmissibleScalar, MatchesFactoredSecondDerivative) {
  const auto s = solve_zero_chern(2.0);
  // F = (1 - z^2)(z^2 + 8z + 12)/13, so F''(0) = (2 - 24)/13.
  const double fpp = (2.0 - 24.0) / 13.0;
  EXPECT_NEAR(admissible_scalar(s, 0.0), 2.0 * s.sSigma * s.x - fpp, 1e-14);
  EXPECT_THROW((void)admissible_scalar(s, 1.0), Error);
  EXPECT_THROW((void)admissible_scalar(s, -1.5), Error);
}

TEST(AdmissibleScalar, ZeroData) {
  AdmissibleSolution s;
  s.x = 0.5;
  s.sSigma = 0.0;
  s.F = EulerF{0.5, 2.0, 0.0, 0.0, 0.0, 0.0};
  for (double z : {-0.5, 0.0, 0.7}) EXPECT_EQ(admissible_scalar(s, z), 0.0);
}

TEST(AdmissibleScalar, QuarticGivesQuadraticNumerator) {
  AdmissibleSolution s;
  s.x = 0.3;
  s.sSigma = -1.2;
  s.F = QuarticF{0.3, 0.2};
  // (1 + xz) s^g must be quadratic: fit on three points, test elsewhere.
  auto num = [&](double z) { return (1.0 + s.x * z) * admissible_scalar(s, z); };
  const double z0 = -0.5, z1 = 0.0, z2 = 0.5;
  const double f0 = num(z0), f1 = num(z1), f2 = num(z2);
  for (int i = 1; i < 40; ++i) {
    const double z = -1.0 + i / 20.0;
    const double lag = f0 * (z - z1) * (z - z2) / ((z0 - z1) * (z0 - z2)) +
                       f1 * (z - z0) * (z - z2) / ((z1 - z0) * (z1 - z2)) +
                       f2 * (z - z0) * (z - z1) / ((z2 - z0) * (z2 - z1));
    EXPECT_NEAR(num(z), lag, 1e-10);
  }
}

TEST(Laplacian, ConstantAndLinear) {
  AdmissibleSolution s;
  s.x = 0.4;
  s.F = QuarticF{0.4, 0.1};
  for (double z : {-0.8, -0.1, 0.3, 0.95}) {
    EXPECT_EQ(admissible_laplacian(s, [](const Jet<2>&) { return Jet<2>(3.0); }, z), 0.0);
    const auto d = F_derivatives(s, z);
    EXPECT_NEAR(admissible_laplacian(s, [](const Jet<2>& w) { return w; }, z), -d[1] / (1.0 + s.x * z), 1e-15);
  }
}

TEST(ConformalChern, ZeroChernBothRoutes) {
  for (double b : {1.5, 2.0, 3.0, 5.0}) {
    const auto s = solve_zero_chern(b);
    const MomentumGrid grid(1001);
    for (double z : grid.nodes()) {
      EXPECT_LE(std::abs(conformal_chern(s, z)), 1e-10) << b << " " << z;
      EXPECT_LE(std::abs(conformal_chern_composed(s, z)), 1e-10) << b << " " << z;
    }
  }
}

TEST(ConformalChern, TwoRouteEqualityOnTableRows) {
  for (const auto& row : kRows) {
    const auto s = solve_x_for_genus(row.genus, row.m, row.b);
    const MomentumGrid grid(101);
    for (double z : grid.nodes()) {
      EXPECT_NEAR(conformal_chern(s, z), conformal_chern_composed(s, z), 1e-9);
      EXPECT_NEAR(conformal_chern(s, z), row.sC, 1e-4);
    }
  }
}

TEST(ConformalChern, DomainErrors) {
  AdmissibleSolution s = solve_zero_chern(2.0);
  s.b = -1.5;
  EXPECT_THROW((void)conformal_chern(s, 0.0), Error);
  EXPECT_THROW((void)conformal_chern(solve_zero_chern(2.0), 1.0), Error);
}

TEST(ZeroChern, ClosedFormAtBTwo) {
  const auto s = solve_zero_chern(2.0);
  EXPECT_NEAR(s.x, 8.0 / 13.0, 1e-15);
  EXPECT_NEAR(s.sSigma, -13.0 / 8.0, 1e-15);
  EXPECT_NEAR(std::get<QuarticF>(s.F).c, 1.0 / 13.0, 1e-15);
  EXPECT_EQ(s.sC, 0.0);
  EXPECT_NEAR(s.sSigma, -1.0 / s.x, 1e-15);
}

TEST(ZeroChern, QuarticMatchesFactoredForm) {
  for (double b : {1.5, 2.0, 3.0, 5.0}) {
    const auto s = solve_zero_chern(b);
    for (int i = 0; i <= 200; ++i) {
      const double z = -1.0 + i / 100.0;
      EXPECT_NEAR(eval_F(s, z), factored_zero_chern_F(b, z), 1e-12) << b << " " << z;
    }
    EXPECT_LE(ruled_boundary_residuals(s).max_abs(), 1e-12);
    EXPECT_TRUE(check_positivity_F(s, 1001));
  }
}

TEST(ZeroChern, LinearSystemAgrees) {
  for (double b : {1.5, 2.0, 3.0, 5.0, 11.0}) {
    const auto s = solve_zero_chern(b);
    const auto v = solve_zero_chern_linear(b);
    EXPECT_NEAR(v(0), s.x, 1e-10);
    EXPECT_NEAR(v(1), std::get<QuarticF>(s.F).c, 1e-10);
    EXPECT_NEAR(v(2), s.sSigma * s.x, 1e-10);
    EXPECT_NEAR(v(3), 0.0, 1e-10);
    // Residual of the closed-form quadruple in the system.
    const auto sys = zero_chern_linear_system(b);
    Eigen::Vector4d q(s.x, std::get<QuarticF>(s.F).c, s.sSigma * s.x, s.sC);
    EXPECT_LE((sys.a * q - sys.rhs).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(ZeroChern, RejectsSmallB) {
  for (double b : {1.0, 0.5, -3.0}) {
    try {
      (void)solve_zero_chern(b);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Domain);
    }
  }
}

TEST(DegreeB, GenusTwoDegreeOne) {
  const double expect = (8.0 + std::sqrt(52.0)) / 6.0;
  EXPECT_NEAR(admissible_b_for_degree(2, 1), expect, 1e-10);
  EXPECT_NEAR(admissible_b_for_degree(3, 2), expect, 1e-10);
  const auto s = solve_zero_chern_for_degree(2, 1);
  EXPECT_NEAR(s.x, 0.5, 1e-14);
  EXPECT_NEAR(s.sSigma, s_sigma(2, 1), 1e-14);
}

TEST(DegreeB, BoundViolations) {
  for (auto [g, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{1, 1}, std::pair{3, 5}}) {
    try {
      (void)admissible_b_for_degree(g, m);
      FAIL() << g << " " << m;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::DegreeBound);
    }
  }
}

TEST(Euler, ZeroDataGivesZero) {
  const EulerF p{0.5, 2.0, 0.0, 0.0, 0.0, 0.0};
  for (double z : {-0.9, 0.0, 0.4}) EXPECT_EQ(euler_general_F(p, z), 0.0);
}

TEST(Euler, ReproducesZeroChernQuartic) {
  // (1 - z^2)(z + 3b)(z + b)/(3b^2 + 1) in powers of w = z + b.
  for (double b : {1.5, 2.0, 4.0}) {
    const auto s = solve_zero_chern(b);
    const double d = 3.0 * b * b + 1.0;
    // F = -w^4/d + w^2 + 2b(1 - b^2) w/d, and y_p = w^2 - (2b/3) w here.
    const double c1 = -1.0 / d;
    const double c2 = 2.0 * b * (1.0 - b * b) / d + 2.0 * b / 3.0;
    const EulerF p{s.x, b, c1, c2, 0.0, s.sSigma};
    for (int i = 0; i <= 40; ++i) {
      const double z = -1.0 + i / 20.0;
      EXPECT_NEAR(euler_general_F(p, z), factored_zero_chern_F(b, z), 1e-12) << b << " " << z;
    }
  }
}

TEST(Euler, OdeResidualOnRandomParameters) {
  std::mt19937_64 g(20240611);
  for (int k = 0; k < 50; ++k) {
    const EulerF p{0.1 + 0.8 * uniform01(g), 1.2 + 3.8 * uniform01(g), uniform01(g) - 0.5,
                   2.0 * uniform01(g) - 1.0, 6.0 * uniform01(g) - 3.0, 4.0 * uniform01(g) - 3.0};
    for (int i = 1; i < 20; ++i) EXPECT_LE(std::abs(euler_ode_residual(p, -1.0 + i / 10.0)), 1e-9);
  }
}

TEST(ClosedForm, TableRowsAtPrintedX) {
  for (const auto& row : kRows) {
    const auto k = closed_form_coefficients(row.x, row.b);
    EXPECT_NEAR(k.sSigma, s_sigma(row.genus, row.m), 1e-3);
    EXPECT_NEAR(k.sC, row.sC, 1e-3);
    EXPECT_NEAR(k.c1, row.c1, 1e-4);
    EXPECT_NEAR(k.c2, row.c2, 1e-3);
  }
}

TEST(ClosedForm, MatchesBoundaryLinearSolve) {
  std::mt19937_64 g(7);
  for (int k = 0; k < 40; ++k) {
    const double x = 0.1 + 0.8 * uniform01(g), b = 1.2 + 3.8 * uniform01(g);
    const auto cf = closed_form_coefficients(x, b);
    const auto lin = boundary_linear_coefficients(x, b);
    const double scale = 1.0 + std::abs(cf.sC) + std::abs(cf.sSigma) + std::abs(cf.c1) + std::abs(cf.c2);
    EXPECT_LE(std::abs(cf.sC - lin.sC), 1e-9 * scale) << x << " " << b;
    EXPECT_LE(std::abs(cf.sSigma - lin.sSigma), 1e-9 * scale);
    EXPECT_LE(std::abs(cf.c1 - lin.c1), 1e-9 * scale);
    EXPECT_LE(std::abs(cf.c2 - lin.c2), 1e-9 * scale);
    EXPECT_LE(ruled_boundary_residuals(euler_solution(x, b)).max_abs(), 1e-9);
  }
}

TEST(ClosedForm, Preconditions) {
  EXPECT_THROW((void)closed_form_coefficients(0.5, 1.0), Error);
  EXPECT_THROW((void)closed_form_coefficients(1.2, 2.0), Error);
}

TEST(SolveX, ReproducesTable) {
  for (const auto& row : kRows) {
    const auto s = solve_x_for_genus(row.genus, row.m, row.b);
    const auto& p = std::get<EulerF>(s.F);
    EXPECT_NEAR(s.x, row.x, 1e-4);
    EXPECT_NEAR(p.c1, row.c1, 1e-4);
    EXPECT_NEAR(p.c2, row.c2, 1e-4);
    EXPECT_NEAR(s.sC, row.sC, 1e-4);
    EXPECT_EQ(s.sSigma, s_sigma(row.genus, row.m));
    EXPECT_TRUE(check_positivity_F(s, 1001));
    EXPECT_LE(ruled_boundary_residuals(s).max_abs(), 1e-9);
    // The constraint holds at the root.
    EXPECT_NEAR(closed_form_coefficients(s.x, s.b).sSigma, s.sSigma, 1e-10);
  }
}

TEST(SolveX, GenusOneIndependentOfDegree) {
  const auto a = solve_x_for_genus(1, 1, 2.0), b = solve_x_for_genus(1, 7, 2.0);
  EXPECT_EQ(a.x, b.x);
}

TEST(SolveX, ExtraRow) {
  const auto all = solve_x_for_genus_all(3, 2, 2.0);
  ASSERT_FALSE(all.empty());
  for (const auto& s : all) EXPECT_LE(ruled_boundary_residuals(s).max_abs(), 1e-9);
}

TEST(Positivity, LargeCFails) {
  AdmissibleSolution s;
  s.x = 0.5;
  s.F = QuarticF{0.5, 10.0};
  EXPECT_FALSE(check_positivity_F(s, 1001));
  EXPECT_THROW((void)check_positivity_F(s, 100), Error);
}
