#pragma once

// Checks a metric file against the property its kind promises, with a
// per-node CSV report.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hermitian/geometry/curvature.hpp"
#include "hermitian/hirzebruch/profile_builder.hpp"
#include "hermitian/io/csv.hpp"
#include "hermitian/io/metric_file.hpp"
#include "hermitian/ruled/admissible.hpp"

namespace hermitian {

struct VerifyOptions {
  double tol = 1e-6;            // constancy tolerance (relative for profiles, absolute for ruled)
  double boundary_tol = 1e-4;   // endpoint derivative conditions of sampled profiles
  double sample_tol = 1e-9;     // stored F against F regenerated from the parameters
};

struct VerifyResult {
  CsvTable report;
  double constancy = 0.0;
  double boundary = 0.0;
  double sample_mismatch = 0.0;
  bool positive = true;
  bool passed = false;
  std::vector<std::string> failures;
};

namespace detail {

inline VerifyResult verify_profile_file(const MetricFile& m, const VerifyOptions& opt) {
  const auto& sol = m.profile_solution();
  const ProfilePair p = m.profile();
  VerifyResult r;
  const auto b = boundary_residuals(p);
  r.boundary = b.max_abs();
  r.report.header = {"t", "f", "h", "sC", "s", "sg", "target", "constancy_residual", "df0", "dfl", "dh0", "dhl"};
  const auto& g = p.grid();
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    const auto q = p.at(g[i]);
    const double target = target_scalar(sol.kind, q);
    const double res = (target - sol.lambda) / std::abs(sol.lambda);
    r.constancy = std::max(r.constancy, std::abs(res));
    r.report.add_row({g[i], q.f.value(), q.h.value(), chern_scalar(q), third_scalar(q), riemannian_scalar(q), target,
                      res, b.df0, b.dfl, b.dh0, b.dhl});
  }
  r.positive = sol.lambda > 0.0 && std::isfinite(sol.lambda);
  if (!(r.constancy <= opt.tol)) {
    r.failures.push_back("constancy residual " + std::to_string(r.constancy) + " exceeds " + std::to_string(opt.tol));
  }
  if (!(r.boundary <= opt.boundary_tol)) {
    r.failures.push_back("boundary residual " + std::to_string(r.boundary) + " exceeds " +
                         std::to_string(opt.boundary_tol));
  }
  if (!r.positive) r.failures.push_back("lambda is not positive");
  return r;
}

inline VerifyResult verify_ruled_file(const MetricFile& m, const VerifyOptions& opt) {
  const auto& sol = m.ruled_solution();
  VerifyResult r;
  const auto b = ruled_boundary_residuals(sol);
  r.boundary = b.max_abs();
  r.report.header = {"z", "F", "sg", "sC_tilde", "sC_tilde_composed", "constancy_residual",
                     "F_minus", "F_plus", "dF_minus", "dF_plus"};
  const double scale = std::max(1.0, std::abs(sol.sC));
  for (std::size_t i = 0; i < m.grid.size(); ++i) {
    const double z = m.grid[i];
    const double expected = eval_F(sol, z);
    r.sample_mismatch = std::max(r.sample_mismatch, std::abs(m.F[i] - expected));
    if (!(std::abs(z) < 1.0)) continue;
    const double sc = conformal_chern(sol, z);
    const double res = (sc - sol.sC) / scale;
    r.constancy = std::max(r.constancy, std::abs(res));
    r.report.add_row({z, m.F[i], admissible_scalar(sol, z), sc, conformal_chern_composed(sol, z), res, b.F_minus,
                      b.F_plus, b.dF_minus, b.dF_plus});
  }
  r.positive = check_positivity_F(sol, 1001);
  if (!(r.constancy <= opt.tol)) {
    r.failures.push_back("conformal Chern residual " + std::to_string(r.constancy) + " exceeds " +
                         std::to_string(opt.tol));
  }
  if (!(r.boundary <= 1e-9)) r.failures.push_back("F boundary residual " + std::to_string(r.boundary) + " exceeds 1e-9");
  if (!(r.sample_mismatch <= opt.sample_tol)) {
    r.failures.push_back("stored F differs from the parameters by " + std::to_string(r.sample_mismatch));
  }
  if (!r.positive) r.failures.push_back("F is not positive on (-1, 1)");
  return r;
}

}  // namespace detail

inline VerifyResult verify_metric_file(const MetricFile& m, const VerifyOptions& opt = {}) {
  if (!(opt.tol > 0.0)) throw Error(ErrorKind::Domain, "tolerance must be positive");
  VerifyResult r = is_ruled(m.kind) ? detail::verify_ruled_file(m, opt) : detail::verify_profile_file(m, opt);
  r.passed = r.failures.empty();
  return r;
}

}  // namespace hermitian
