#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypertensor/detail/combinatorics.hpp"
#include "hypertensor/eigenpair.hpp"
#include "hypertensor/error.hpp"
#include "hypertensor/tensor.hpp"

namespace hypertensor {

struct OracleOptions {
  std::size_t starts = 2000;
  std::uint64_t seed = 0;
  /// Newton stops once |F(x, lambda)|_2 <= tol.
  double tol = 1e-12;
  std::size_t max_newton = 100;
  std::size_t max_halvings = 20;
  std::size_t max_n = 8;
  double lambda_merge = 1e-6;
  double vector_merge = 1e-5;
};

namespace detail {

/// F(x, lambda) = (A x^{m-1} - lambda x, (x.x - 1) / 2).
inline Eigen::VectorXd z_system(const SymmetricTensor& a, const Eigen::VectorXd& z) {
  const auto n = static_cast<Eigen::Index>(a.dimension());
  Eigen::VectorXd f(n + 1);
  Vector x(z.data(), z.data() + n);
  Vector ax(a.dimension());
  a.apply_into(x, ax);
  const double lambda = z(n);
  for (Eigen::Index i = 0; i < n; ++i)
    f(i) = ax[static_cast<std::size_t>(i)] - lambda * z(i);
  f(n) = 0.5 * (z.head(n).squaredNorm() - 1.0);
  return f;
}

inline Eigen::MatrixXd z_system_jacobian(const SymmetricTensor& a, const Eigen::VectorXd& z) {
  const auto n = static_cast<Eigen::Index>(a.dimension());
  Vector x(z.data(), z.data() + n);
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n + 1, n + 1);
  j.topLeftCorner(n, n) = a.jacobian(x);
  j.topLeftCorner(n, n).diagonal().array() -= z(n);
  j.topRightCorner(n, 1) = -z.head(n);
  j.bottomLeftCorner(1, n) = z.head(n).transpose();
  return j;
}

/// Damped Newton from one start. Uses the minimum-norm step so that
/// continua of eigenvectors (singular Jacobian) are still approached.
inline std::optional<EigenPair> newton_z(const SymmetricTensor& a, Vector x0,
                                         const OracleOptions& opt) {
  const auto n = static_cast<Eigen::Index>(a.dimension());
  Eigen::VectorXd z(n + 1);
  for (Eigen::Index i = 0; i < n; ++i)
    z(i) = x0[static_cast<std::size_t>(i)];
  z(n) = a.poly_into(x0);
  Eigen::VectorXd f = z_system(a, z);
  double fn = f.norm();
  for (std::size_t it = 0; it < opt.max_newton && fn > opt.tol; ++it) {
    const Eigen::VectorXd step =
        z_system_jacobian(a, z).completeOrthogonalDecomposition().solve(-f);
    if (!step.allFinite())
      return std::nullopt;
    double t = 1.0;
    bool improved = false;
    for (std::size_t h = 0; h <= opt.max_halvings; ++h, t *= 0.5) {
      const Eigen::VectorXd trial = z + t * step;
      const Eigen::VectorXd ft = z_system(a, trial);
      if (ft.norm() < fn) {
        z = trial;
        f = ft;
        fn = ft.norm();
        improved = true;
        break;
      }
    }
    if (!improved)
      break;
  }
  if (!(fn <= std::sqrt(opt.tol)))
    return std::nullopt;
  Vector x(z.data(), z.data() + n);
  const double nx = norm2(x);
  for (auto& v : x)
    v /= nx;
  const double lambda = a.poly_into(x);
  auto pair = make_pair(a, EigenKind::Z, lambda, std::move(x));
  if (pair.residual > 1e-2 * kCertifyTolerance)
    return std::nullopt;
  return pair;
}

/// For even m, x and -x carry the same eigenvalue: make the first coordinate
/// of largest magnitude positive.
inline void canonical_sign(Vector& x) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < x.size(); ++i)
    if (std::abs(x[i]) > std::abs(x[best]) + 1e-9)
      best = i;
  if (x[best] < 0.0)
    for (auto& v : x)
      v = -v;
}

} // namespace detail

/// Real Z-eigenpairs of A found by damped Newton on
/// {A x^{m-1} = lambda x, |x| = 1} from random starts on the sphere.
/// Pairs are merged when lambda agrees within lambda_merge and the vectors
/// within vector_merge (max norm), and returned sorted by lambda descending.
/// An empty result means every start diverged.
inline std::vector<EigenPair> brute_force_z_oracle(const SymmetricTensor& a,
                                                   const OracleOptions& opt = {}) {
  const std::size_t n = a.dimension();
  if (n > opt.max_n)
    throw SearchLimitExceeded("Z-eigenpair oracle needs n <= " + std::to_string(opt.max_n) +
                              ", got n = " + std::to_string(n));
  std::vector<std::optional<EigenPair>> found(opt.starts);
  detail::parallel_for(opt.starts, [&](std::size_t s) {
    std::seed_seq seq{static_cast<std::uint32_t>(opt.seed),
                      static_cast<std::uint32_t>(opt.seed >> 32), static_cast<std::uint32_t>(s),
                      0x5eedu};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> g(0.0, 1.0);
    Vector x(n);
    double nx = 0.0;
    while (nx == 0.0) {
      for (auto& v : x)
        v = g(rng);
      nx = norm2(x);
    }
    for (auto& v : x)
      v /= nx;
    found[s] = detail::newton_z(a, std::move(x), opt);
  });

  const bool even = a.order() % 2 == 0;
  std::vector<EigenPair> pairs;
  for (auto& f : found)
    if (f) {
      if (even)
        detail::canonical_sign(f->vector);
      pairs.push_back(std::move(*f));
    }
  std::sort(pairs.begin(), pairs.end(), [](const EigenPair& p, const EigenPair& q) {
    if (p.value != q.value)
      return p.value > q.value;
    return p.vector < q.vector;
  });

  std::vector<EigenPair> distinct;
  for (auto& p : pairs) {
    const bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const EigenPair& q) {
      if (std::abs(p.value - q.value) > opt.lambda_merge)
        return false;
      for (std::size_t i = 0; i < n; ++i)
        if (std::abs(p.vector[i] - q.vector[i]) > opt.vector_merge)
          return false;
      return true;
    });
    if (!seen)
      distinct.push_back(std::move(p));
  }
  return distinct;
}

/// Distinct eigenvalues (merged within tol), sorted descending.
inline std::vector<double> distinct_eigenvalues(const std::vector<EigenPair>& pairs,
                                                double tol = 1e-6) {
  std::vector<double> values;
  for (const auto& p : pairs)
    values.push_back(p.value);
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<double> out;
  for (double v : values)
    if (out.empty() || out.back() - v > tol)
      out.push_back(v);
  return out;
}

} // namespace hypertensor
