#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hypertensor/eigenpair.hpp"
#include "hypertensor/error.hpp"
#include "hypertensor/tensor.hpp"

namespace hypertensor {

enum class ShiftMode {
  /// alpha = ceil(m * sum of all entries), fixed for the whole run.
  Conservative,
  /// alpha_k = max(0, tau - (m-1) * lambda_min(A x_k^{m-2})), recomputed each
  /// step; keeps the shifted form locally convex with much less over-shift.
  Adaptive,
};

struct SshopmConfig {
  /// Explicit shift. When empty the shift follows `shift_mode`.
  std::optional<double> alpha;
  ShiftMode shift_mode = ShiftMode::Conservative;
  double adaptive_tau = 1e-6;
  /// Start vector; empty means the uniform vector. Must be nonnegative and nonzero.
  Vector start;
  double tol = 1e-10;
  double residual_tol = 1e-9;
  std::size_t max_iter = 10000;
  bool keep_trace = false;
};

struct SshopmStep {
  std::size_t iteration = 0;
  double lambda = 0.0;
  double residual = 0.0;
  double alpha = 0.0;
};

struct SshopmResult {
  EigenPair pair;
  bool converged = false;
  std::size_t iterations = 0;
  double alpha = 0.0;
  std::vector<SshopmStep> trace;
};

/// ceil(m * sum_{i1..im} a_{i1..im}).
inline double conservative_shift(const SymmetricTensor& a) {
  return std::ceil(static_cast<double>(a.order()) * a.entry_sum());
}

namespace detail {

inline double adaptive_shift(const SymmetricTensor& a, std::span<const double> x, double tau) {
  // jacobian = (m-1) A x^{m-2}, so its smallest eigenvalue already carries
  // the (m-1) factor.
  const Eigen::MatrixXd J = a.jacobian(x);
  const Eigen::MatrixXd sym = 0.5 * (J + J.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return std::max(0.0, tau - es.eigenvalues().minCoeff());
}

} // namespace detail

/// Shifted symmetric higher-order power method for Z-eigenpairs:
/// y = A x^{m-1} + alpha x, x <- y / |y|, lambda <- A x^m.
/// Stops once |lambda_{k+1} - lambda_k| <= tol and the residual is at most
/// residual_tol. Non-convergence is reported through `converged`.
inline SshopmResult sshopm(const SymmetricTensor& a, const SshopmConfig& cfg = {}) {
  const std::size_t n = a.dimension();
  Vector x = cfg.start.empty() ? Vector(n, 1.0) : cfg.start;
  if (x.size() != n)
    throw DimensionMismatch(n, x.size());
  if (std::any_of(x.begin(), x.end(), [](double v) { return v < 0.0 || !std::isfinite(v); }))
    throw PreconditionError("SS-HOPM start must be nonnegative and finite");
  const double start_norm = norm2(x);
  if (start_norm == 0.0)
    throw PreconditionError("SS-HOPM start must be nonzero");
  for (auto& v : x)
    v /= start_norm;

  SshopmResult result;
  const bool adaptive = !cfg.alpha && cfg.shift_mode == ShiftMode::Adaptive;
  double alpha = cfg.alpha ? *cfg.alpha : conservative_shift(a);

  Vector ax(n);
  a.apply_into(x, ax);
  double lambda = a.poly_into(x);
  auto residual_of = [&](double lam) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      s += (ax[i] - lam * x[i]) * (ax[i] - lam * x[i]);
    return std::sqrt(s);
  };
  double residual = residual_of(lambda);
  if (cfg.keep_trace)
    result.trace.push_back({0, lambda, residual, alpha});

  std::size_t k = 0;
  bool converged = false;
  while (k < cfg.max_iter) {
    if (adaptive)
      alpha = detail::adaptive_shift(a, x, cfg.adaptive_tau);
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i)
      y[i] = ax[i] + alpha * x[i];
    const double ny = norm2(y);
    if (ny == 0.0)
      throw PreconditionError("SS-HOPM produced y = 0; the shift is degenerate");
    for (std::size_t i = 0; i < n; ++i)
      x[i] = y[i] / ny;
    a.apply_into(x, ax);
    const double next = a.poly_into(x);
    const double change = std::abs(next - lambda);
    lambda = next;
    residual = residual_of(lambda);
    ++k;
    if (cfg.keep_trace)
      result.trace.push_back({k, lambda, residual, alpha});
    if (change <= cfg.tol && residual <= cfg.residual_tol) {
      converged = true;
      break;
    }
  }
  result.converged = converged;
  result.iterations = k;
  result.alpha = alpha;
  result.pair = make_pair(a, EigenKind::Z, lambda, std::move(x));
  return result;
}

} // namespace hypertensor
