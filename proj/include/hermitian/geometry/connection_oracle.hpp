#pragma once

// Connection-level recomputation of the curvature of the U(2)-invariant
// Hermitian structure, used as an oracle for the closed forms in
// curvature.hpp. Everything is built from two inputs only: the structure
// constants of the orthonormal frame E1 = X/h, E2 = Y/h, E3 = V/f, E4 = d/dt
//   [E1,E2] = (2f/h^2) E3, [E1,E3] = -(2/f) E2, [E2,E3] = (2/f) E1,
//   [Ei,E4] = (h'/h) Ei (i = 1, 2), [E3,E4] = (f'/f) E3,
// and the complex structure J E1 = E2, J E3 = E4. The Chern connection comes
// from the frame formula
//   g(D_X Z, Y) = 1/4 g([X,Z] + [JX,JZ] + J[JX,Z] - J[X,JZ], Y)
//               - 1/4 g([X,Y] + [JX,JY] + J[JX,Y] - J[X,JY], Z)
// (the derivative terms drop because the frame is orthonormal), and the
// curvature from R(X,Y) = [D_X, D_Y] - D_[X,Y]. Functions of t are carried as
// first-order jets so that E4 derivatives of connection coefficients are
// exact.

#include <array>
#include <cstddef>

#include "hermitian/geometry/curvature.hpp"
#include "hermitian/geometry/profile.hpp"
#include "hermitian/numerics/jet.hpp"

namespace hermitian {

using FrameVector = std::array<double, 4>;

/// Coefficients of a connection in the orthonormal frame:
/// coeff[i][j][k] = g(D_{E_i} E_j, E_k), plus their t-derivatives and the
/// frame structure constants bracket[i][j][k] = g([E_i, E_j], E_k).
struct FrameConnection {
  std::array<std::array<FrameVector, 4>, 4> coeff{};
  std::array<std::array<FrameVector, 4>, 4> coeff_dt{};
  std::array<std::array<FrameVector, 4>, 4> bracket{};
};

/// curvature[a][b][c][k] = g(R(E_a, E_b) E_c, E_k).
using CurvatureTensor = std::array<std::array<std::array<FrameVector, 4>, 4>, 4>;

struct OracleReport {
  FrameConnection chern;
  CurvatureTensor chern_curvature{};
  std::array<std::array<double, 4>, 4> rho{};  // first Ricci form, all components
  std::array<std::array<double, 4>, 4> r{};    // second Ricci form, all components
  CurvatureReport scalars;
};

namespace detail {

using J1 = Jet<1>;
using J1Vec = std::array<J1, 4>;
using Brackets = std::array<std::array<J1Vec, 4>, 4>;

inline Brackets frame_brackets(const ProfilePoint& p) {
  const J1 f = J1::from_derivatives({p.f.value(), p.f.d(1)});
  const J1 f1 = J1::from_derivatives({p.f.d(1), p.f.d(2)});
  const J1 h = J1::from_derivatives({p.h.value(), p.h.d(1)});
  const J1 h1 = J1::from_derivatives({p.h.d(1), p.h.d(2)});
  Brackets c{};
  auto set = [&c](int i, int j, int k, const J1& v) {
    c[i][j][k] = v;
    c[j][i][k] = -v;
  };
  set(0, 1, 2, 2.0 * f / (h * h));
  set(0, 2, 1, -2.0 / f);
  set(1, 2, 0, 2.0 / f);
  set(0, 3, 0, h1 / h);
  set(1, 3, 1, h1 / h);
  set(2, 3, 2, f1 / f);
  return c;
}

inline std::array<double, 4> apply_j(const std::array<double, 4>& v) {
  return {-v[1], v[0], -v[3], v[2]};
}

inline J1Vec apply_j(const J1Vec& v) { return {-v[1], v[0], -v[3], v[2]}; }

/// Bracket of constant-coefficient combinations of frame fields.
inline J1Vec bracket(const Brackets& c, const std::array<double, 4>& x, const std::array<double, 4>& z) {
  J1Vec out{};
  for (int i = 0; i < 4; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < 4; ++j) {
      if (z[j] == 0.0) continue;
      for (int k = 0; k < 4; ++k) out[k] += x[i] * z[j] * c[i][j][k];
    }
  }
  return out;
}

inline J1Vec chern_b(const Brackets& c, const std::array<double, 4>& x, const std::array<double, 4>& z) {
  const auto jx = apply_j(x);
  const auto jz = apply_j(z);
  const J1Vec t1 = bracket(c, x, z);
  const J1Vec t2 = bracket(c, jx, jz);
  const J1Vec t3 = apply_j(bracket(c, jx, z));
  const J1Vec t4 = apply_j(bracket(c, x, jz));
  J1Vec out{};
  for (int k = 0; k < 4; ++k) out[k] = t1[k] + t2[k] + t3[k] - t4[k];
  return out;
}

inline std::array<double, 4> unit(int i) {
  std::array<double, 4> e{};
  e[i] = 1.0;
  return e;
}

using Coeffs = std::array<std::array<J1Vec, 4>, 4>;

inline FrameConnection to_connection(const Coeffs& g, const Brackets& c) {
  FrameConnection out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        out.coeff[i][j][k] = g[i][j][k].value();
        out.coeff_dt[i][j][k] = g[i][j][k].d(1);
        out.bracket[i][j][k] = c[i][j][k].value();
      }
  return out;
}

/// R(E_a, E_b) E_c for a connection with t-dependent coefficients.
inline CurvatureTensor curvature_of(const FrameConnection& conn) {
  CurvatureTensor R{};
  // D_a of the vector field V = sum_j V_j E_j with V_j' known.
  auto covariant = [&conn](int a, const FrameVector& v, const FrameVector& v_dt) {
    FrameVector out{};
    if (a == 3) out = v_dt;
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) out[k] += v[j] * conn.coeff[a][j][k];
    return out;
  };
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int cidx = 0; cidx < 4; ++cidx) {
        const FrameVector dadbc = covariant(a, conn.coeff[b][cidx], conn.coeff_dt[b][cidx]);
        const FrameVector dbdac = covariant(b, conn.coeff[a][cidx], conn.coeff_dt[a][cidx]);
        FrameVector out{};
        for (int k = 0; k < 4; ++k) out[k] = dadbc[k] - dbdac[k];
        for (int m = 0; m < 4; ++m) {
          const double cab = conn.bracket[a][b][m];
          if (cab == 0.0) continue;
          for (int k = 0; k < 4; ++k) out[k] -= cab * conn.coeff[m][cidx][k];
        }
        R[a][b][cidx] = out;
      }
  return R;
}

}  // namespace detail

/// Chern connection coefficients from the frame formula.
inline FrameConnection connection_oracle(const ProfilePoint& p) {
  using namespace detail;
  const Brackets c = frame_brackets(p);
  Coeffs g{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const J1Vec bij = chern_b(c, unit(i), unit(j));
      for (int k = 0; k < 4; ++k) {
        const J1Vec bik = chern_b(c, unit(i), unit(k));
        g[i][j][k] = 0.25 * bij[k] - 0.25 * bik[j];
      }
    }
  return to_connection(g, c);
}

/// Levi-Civita coefficients from the Koszul formula in an orthonormal frame:
/// g(D_i E_j, E_k) = 1/2 (c_ijk - c_jki + c_kij).
inline FrameConnection levi_civita_oracle(const ProfilePoint& p) {
  using namespace detail;
  const Brackets c = frame_brackets(p);
  Coeffs g{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) g[i][j][k] = 0.5 * (c[i][j][k] - c[j][k][i] + c[k][i][j]);
  return to_connection(g, c);
}

/// Full curvature recomputation and traces. theta_t and delta_theta are not
/// recomputed here; they are copied from the closed forms.
inline OracleReport curvature_oracle(const ProfilePoint& p) {
  OracleReport out;
  out.chern = connection_oracle(p);
  out.chern_curvature = detail::curvature_of(out.chern);
  const auto& R = out.chern_curvature;

  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      out.rho[a][b] = -R[a][b][0][1] - R[a][b][2][3];
      out.r[a][b] = -R[0][1][a][b] - R[2][3][a][b];
    }
  out.scalars.rho = {out.rho[0][1], out.rho[2][3]};
  out.scalars.r = {out.r[0][1], out.r[2][3]};
  out.scalars.sC = out.scalars.rho.trace();

  double s3 = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s3 += R[i][j][i][j];
  out.scalars.s3 = -0.5 * s3;

  const CurvatureTensor lc = detail::curvature_of(levi_civita_oracle(p));
  double sg = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) sg += lc[i][j][j][i];
  out.scalars.sg = sg;

  out.scalars.theta_t = lee_form(p);
  out.scalars.delta_theta = codifferential_lee(p);
  return out;
}

template <Profile P>
FrameConnection connection_oracle(const P& p, double t) {
  require_interior(p, t);
  return connection_oracle(p.at(t));
}

template <Profile P>
OracleReport curvature_oracle(const P& p, double t) {
  require_interior(p, t);
  return curvature_oracle(p.at(t));
}

}  // namespace hermitian
