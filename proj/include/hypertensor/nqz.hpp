#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "hypertensor/eigenpair.hpp"
#include "hypertensor/error.hpp"
#include "hypertensor/tensor.hpp"

namespace hypertensor {

/// One NQZ iterate with its Collatz-Wielandt style bracket
/// lower = min_i y_i / x_i^{m-1} <= rho <= max_i y_i / x_i^{m-1} = upper.
struct NqzState {
  std::size_t iteration = 0;
  Vector x;
  Vector y;
  double lower = 0.0;
  double upper = 0.0;
};

struct NqzOptions {
  /// Single run on A + mu*E when set; otherwise the mu_schedule runs and the
  /// result is extrapolated linearly to mu = 0.
  std::optional<double> mu;
  std::vector<double> mu_schedule{1e-3, 1e-4, 1e-5};
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  /// Refine the final iterate on A + shift*I (I the diagonal unit tensor) so
  /// the returned H-pair satisfies A x^{m-1} = rho x^{[m-1]} for A itself.
  bool refine = true;
  double refine_shift = 1.0;
  std::size_t refine_max_iter = 200000;
  bool keep_trace = true;
};

struct NqzRun {
  double mu = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  double lower = 0.0;
  double upper = 0.0;
  Vector x;
  std::vector<NqzState> trace;

  double estimate() const { return 0.5 * (lower + upper); }
};

struct NqzResult {
  /// H-spectral radius estimate (bracket midpoints extrapolated to mu = 0).
  double rho = 0.0;
  /// H-eigenpair of A with sum x_i^m = 1.
  EigenPair pair;
  /// Every scheduled run closed its bracket to tol.
  bool converged = false;
  /// pair.residual <= kCertifyTolerance.
  bool certified = false;
  std::vector<NqzRun> runs;
  std::size_t refine_iterations = 0;
};

namespace detail {

inline void normalize_m(Vector& x, std::size_t m) {
  double s = 0.0;
  for (auto v : x)
    s += std::pow(v, static_cast<double>(m));
  const double scale = std::pow(s, -1.0 / static_cast<double>(m));
  for (auto& v : x)
    v *= scale;
}

inline std::pair<double, double> bracket(std::span<const double> x, std::span<const double> y,
                                         std::size_t m) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] / std::pow(x[i], static_cast<double>(m - 1));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

using TensorOperator = std::function<void(std::span<const double>, std::span<double>)>;

/// NQZ power iteration x <- normalize(y^{[1/(m-1)]}), y <- op(x) from a
/// strictly positive start. Stops when upper - lower <= tol.
inline NqzRun nqz_iterate(const TensorOperator& op, std::size_t m, Vector x, double tol,
                          std::size_t max_iter, bool keep_trace) {
  NqzRun run;
  normalize_m(x, m);
  Vector y(x.size());
  op(x, y);
  auto [lo, hi] = bracket(x, y, m);
  if (keep_trace)
    run.trace.push_back({0, x, y, lo, hi});
  const double root = 1.0 / static_cast<double>(m - 1);
  std::size_t k = 0;
  while (hi - lo > tol && k < max_iter) {
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = std::pow(y[i], root);
    normalize_m(x, m);
    op(x, y);
    std::tie(lo, hi) = bracket(x, y, m);
    ++k;
    if (keep_trace)
      run.trace.push_back({k, x, y, lo, hi});
  }
  run.converged = hi - lo <= tol;
  run.iterations = k;
  run.lower = lo;
  run.upper = hi;
  run.x = std::move(x);
  return run;
}

/// Richardson extrapolation of rho(mu) to mu = 0: Neville's tableau of
/// repeated linear steps, exact for polynomials of degree < mu.size().
inline double extrapolate_to_zero(std::span<const double> mu, std::span<const double> rho) {
  std::vector<double> p(rho.begin(), rho.end());
  for (std::size_t k = 1; k < p.size(); ++k)
    for (std::size_t i = 0; i + k < p.size(); ++i)
      p[i] = (mu[i] * p[i + 1] - mu[i + k] * p[i]) / (mu[i] - mu[i + k]);
  return p[0];
}

} // namespace detail

/// H-spectral radius of a nonnegative tensor by the NQZ algorithm started at
/// the all-ones vector, run on the positive perturbation A + mu*E.
inline NqzResult nqz_h_spectral_radius(const SymmetricTensor& a, const NqzOptions& opt = {}) {
  if (!a.is_nonnegative())
    throw PreconditionError("NQZ needs a nonnegative tensor");
  if (a.is_zero())
    throw PreconditionError("NQZ needs a nonzero tensor");
  const std::size_t m = a.order(), n = a.dimension();

  std::vector<double> schedule = opt.mu ? std::vector<double>{*opt.mu} : opt.mu_schedule;
  if (schedule.empty())
    throw PreconditionError("empty mu schedule");
  for (double mu : schedule) {
    if (mu < 0.0)
      throw PreconditionError("mu must be nonnegative");
    if (mu == 0.0 && !is_weakly_irreducible(a))
      throw PreconditionError("mu = 0 needs a weakly irreducible tensor");
  }

  NqzResult result;
  result.converged = true;
  Vector start(n, 1.0);
  std::vector<double> mus, estimates;
  for (std::size_t r = 0; r < schedule.size(); ++r) {
    const double mu = schedule[r];
    auto op = [&a, mu, m](std::span<const double> x, std::span<double> y) {
      a.apply_into(x, y);
      if (mu > 0.0) {
        double s = 0.0;
        for (auto v : x)
          s += v;
        const double e = mu * std::pow(s, static_cast<double>(m - 1));
        for (auto& v : y)
          v += e;
      }
    };
    // Later runs warm-start from the previous mu's iterate.
    NqzRun run = detail::nqz_iterate(op, m, r == 0 ? start : result.runs.back().x, opt.tol,
                                     opt.max_iter, opt.keep_trace);
    run.mu = mu;
    result.converged = result.converged && run.converged;
    mus.push_back(mu);
    estimates.push_back(run.estimate());
    result.runs.push_back(std::move(run));
  }
  result.rho = detail::extrapolate_to_zero(mus, estimates);

  Vector x = result.runs.back().x;
  if (opt.refine) {
    const double shift = opt.refine_shift;
    auto op = [&a, shift, m](std::span<const double> v, std::span<double> y) {
      a.apply_into(v, y);
      for (std::size_t i = 0; i < v.size(); ++i)
        y[i] += shift * std::pow(v[i], static_cast<double>(m - 1));
    };
    // Iterate in blocks so the residual test, which also covers reducible
    // tensors whose bracket never closes, is checked regularly.
    const std::size_t block = 50;
    std::size_t done = 0;
    while (done < opt.refine_max_iter) {
      NqzRun r = detail::nqz_iterate(op, m, x, opt.tol * 1e-2, block, false);
      if (r.iterations == 0 && !r.converged)
        break;
      done += r.iterations;
      x = std::move(r.x);
      const double lambda = poly_eval(a, x);
      if (r.converged || h_residual(a, lambda, x) <= 1e-2 * kCertifyTolerance)
        break;
    }
    result.refine_iterations = done;
  }
  detail::normalize_m(x, m);
  const double lambda = poly_eval(a, x);
  result.pair = make_pair(a, EigenKind::H, lambda, std::move(x));
  result.certified = result.pair.residual <= kCertifyTolerance;
  return result;
}

} // namespace hypertensor
