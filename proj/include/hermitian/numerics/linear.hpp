#pragma once

#include <Eigen/Dense>

#include "hermitian/error.hpp"

namespace hermitian {

/// Dense solve for the small systems in this library (n <= 8). Rejects
/// matrices whose reciprocal condition estimate is below 1e-12 and any
/// solution whose residual exceeds 1e-10 * |b|_inf.
inline Eigen::VectorXd solve_linear(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const auto n = a.rows();
  if (a.cols() != n || b.size() != n) throw Error(ErrorKind::Domain, "linear system must be square");
  if (n == 0 || n > 8) throw Error(ErrorKind::Domain, "linear systems are limited to 1 <= n <= 8");
  if (!a.allFinite() || !b.allFinite()) throw Error(ErrorKind::Evaluation, "non-finite linear system");

  // Row equilibration keeps the condition estimate meaningful when rows come
  // from boundary conditions of very different magnitude.
  Eigen::VectorXd scale = a.cwiseAbs().rowwise().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (scale(i) == 0.0) throw Error(ErrorKind::Degeneracy, "zero row in linear system");
  }
  const Eigen::MatrixXd as = scale.cwiseInverse().asDiagonal() * a;
  const Eigen::VectorXd bs = scale.cwiseInverse().asDiagonal() * b;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(as);
  if (!(lu.rcond() > 1e-12)) throw Error(ErrorKind::Degeneracy, "matrix is singular or ill-conditioned");
  Eigen::VectorXd x = lu.solve(bs);

  const double bnorm = b.cwiseAbs().maxCoeff();
  const double res = (a * x - b).cwiseAbs().maxCoeff();
  if (res > 1e-10 * bnorm) {
    throw Error(ErrorKind::Degeneracy, "linear solve residual too large");
  }
  return x;
}

}  // namespace hermitian
