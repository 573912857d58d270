#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "hypertensor/eigenpair.hpp"
#include "hypertensor/error.hpp"
#include "hypertensor/hypergraph.hpp"
#include "hypertensor/tensor.hpp"

namespace hypertensor {

struct SymmetryCheck {
  bool symmetric = false;
  double sum = 0.0;
};

/// Whether the multiset `eigs` equals its own negation within tol.
inline SymmetryCheck spectrum_symmetry_check(std::span<const double> eigs, double tol = 1e-6) {
  std::vector<double> up(eigs.begin(), eigs.end());
  std::sort(up.begin(), up.end());
  SymmetryCheck out;
  out.sum = std::accumulate(up.begin(), up.end(), 0.0);
  out.symmetric = true;
  // The i-th smallest must mirror the i-th largest.
  for (std::size_t i = 0; i < up.size(); ++i)
    if (std::abs(up[i] + up[up.size() - 1 - i]) > tol) {
      out.symmetric = false;
      break;
    }
  return out;
}

/// Mirror of a Z-eigenpair: (-lambda, -x) for odd m; for even m, (-lambda, y)
/// with y the sign flip of x on the first part of an m-partition.
/// The partition must split every nonzero entry's indices one per part.
inline EigenPair negate_eigenpair(const SymmetricTensor& a, const EigenPair& pair,
                                  const std::optional<Partition>& partition = std::nullopt,
                                  double tol = kCertifyTolerance) {
  if (pair.kind != EigenKind::Z)
    throw PreconditionError("negate_eigenpair expects a Z-eigenpair");
  const std::size_t n = a.dimension(), m = a.order();
  if (pair.vector.size() != n)
    throw DimensionMismatch(n, pair.vector.size());
  Vector y = pair.vector;
  if (m % 2 == 1) {
    for (auto& v : y)
      v = -v;
  } else {
    if (!partition)
      throw PreconditionError("even order needs an m-partition to mirror an eigenpair");
    if (partition->size() != m)
      throw PreconditionError("partition must have exactly m parts");
    std::vector<std::size_t> part(n, m);
    for (std::size_t c = 0; c < m; ++c)
      for (auto v : (*partition)[c]) {
        if (v >= n || part[v] != m)
          throw PreconditionError("partition parts must be disjoint vertex sets");
        part[v] = c;
      }
    if (std::find(part.begin(), part.end(), m) != part.end())
      throw PreconditionError("partition must cover every vertex");
    for (const auto& [key, value] : a.entries()) {
      std::vector<std::size_t> hits(m, 0);
      for (auto k : key)
        ++hits[part[k]];
      if (std::any_of(hits.begin(), hits.end(), [](std::size_t h) { return h != 1; }))
        throw PreconditionError("partition is not an m-partition of the tensor's support");
    }
    for (auto v : (*partition)[0])
      y[v] = -y[v];
  }
  auto mirrored = make_pair(a, EigenKind::Z, -pair.value, std::move(y));
  certify(a, mirrored, tol);
  return mirrored;
}

} // namespace hypertensor
