#pragma once

#include <cmath>
#include <span>
#include <string>

#include "hypertensor/error.hpp"
#include "hypertensor/tensor.hpp"

namespace hypertensor {

/// H: A x^{m-1} = lambda x^{[m-1]}, normalized so sum |x_i|^m = 1.
/// Z: A x^{m-1} = lambda x, normalized so |x|_2 = 1.
enum class EigenKind { H, Z };

inline const char* to_string(EigenKind k) { return k == EigenKind::H ? "H" : "Z"; }

struct EigenPair {
  EigenKind kind = EigenKind::Z;
  double value = 0.0;
  Vector vector;
  double residual = 0.0;
};

/// Residuals at or below this are certified.
inline constexpr double kCertifyTolerance = 1e-8;

inline double norm2(std::span<const double> x) {
  double s = 0.0;
  for (auto v : x)
    s += v * v;
  return std::sqrt(s);
}

inline double z_residual(const SymmetricTensor& a, double lambda, std::span<const double> x) {
  const Vector ax = apply(a, x);
  double s = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    const double r = ax[i] - lambda * x[i];
    s += r * r;
  }
  return std::sqrt(s);
}

inline double h_residual(const SymmetricTensor& a, double lambda, std::span<const double> x) {
  const Vector ax = apply(a, x);
  const Vector xp = power_vector(x, static_cast<unsigned>(a.order() - 1));
  double s = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    const double r = ax[i] - lambda * xp[i];
    s += r * r;
  }
  return std::sqrt(s);
}

/// Residual recomputed from scratch, ignoring the stored one.
inline double recompute_residual(const SymmetricTensor& a, const EigenPair& p) {
  return p.kind == EigenKind::Z ? z_residual(a, p.value, p.vector)
                                : h_residual(a, p.value, p.vector);
}

/// Distance of the vector from its kind's normalization surface.
inline double normalization_error(const EigenPair& p, std::size_t m) {
  if (p.kind == EigenKind::Z)
    return std::abs(norm2(p.vector) - 1.0);
  double s = 0.0;
  for (auto v : p.vector)
    s += std::pow(std::abs(v), static_cast<double>(m));
  return std::abs(s - 1.0);
}

inline EigenPair make_pair(const SymmetricTensor& a, EigenKind kind, double lambda, Vector x) {
  EigenPair p{kind, lambda, std::move(x), 0.0};
  p.residual = recompute_residual(a, p);
  return p;
}

inline bool is_certified(const SymmetricTensor& a, const EigenPair& p,
                         double tol = kCertifyTolerance) {
  return p.vector.size() == a.dimension() && recompute_residual(a, p) <= tol &&
         normalization_error(p, a.order()) <= 1e-10;
}

/// Throws CertificationFailure unless the pair passes independent verification.
inline void certify(const SymmetricTensor& a, const EigenPair& p, double tol = kCertifyTolerance) {
  if (p.vector.size() != a.dimension())
    throw DimensionMismatch(a.dimension(), p.vector.size());
  const double r = recompute_residual(a, p);
  if (!(r <= tol))
    throw CertificationFailure(std::string(to_string(p.kind)) + "-eigenpair residual " +
                               std::to_string(r) + " exceeds " + std::to_string(tol));
  if (normalization_error(p, a.order()) > 1e-10)
    throw CertificationFailure(std::string(to_string(p.kind)) + "-eigenvector is not normalized");
}

} // namespace hypertensor
