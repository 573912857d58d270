#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

#include "hypertensor/eigenpair.hpp"
#include "hypertensor/error.hpp"
#include "hypertensor/hypergraph.hpp"
#include "hypertensor/tensor.hpp"

namespace hypertensor {

struct PositivityClass {
  bool strictly_positive = false;
  /// Coordinates with |x_i| <= zero_tol.
  VertexSet zero_set;
  /// zero_set is empty, or a valid witness that H is not nicely-connected.
  bool witness_consistent = false;
};

/// Zero pattern of a nonnegative Z-eigenvector with positive eigenvalue.
/// A nonempty zero set must be a not-nicely-connected witness, since
/// nicely-connected hypergraphs only admit strictly positive such vectors.
inline PositivityClass classify_positivity(const Hypergraph& h, const EigenPair& pair,
                                           double zero_tol = 1e-7) {
  if (pair.kind != EigenKind::Z)
    throw PreconditionError("positivity is classified for Z-eigenpairs");
  if (pair.vector.size() != h.vertex_count())
    throw DimensionMismatch(h.vertex_count(), pair.vector.size());
  if (!(pair.value > 0.0))
    throw PreconditionError("positivity classification needs lambda > 0");
  if (std::any_of(pair.vector.begin(), pair.vector.end(),
                  [&](double v) { return v < -zero_tol; }))
    throw PreconditionError("positivity classification needs a nonnegative eigenvector");
  PositivityClass out;
  for (std::size_t i = 0; i < pair.vector.size(); ++i)
    if (std::abs(pair.vector[i]) <= zero_tol)
      out.zero_set.push_back(i);
  out.strictly_positive = out.zero_set.empty();
  out.witness_consistent = out.strictly_positive || is_witness(h, out.zero_set);
  return out;
}

/// Extends a Z-eigenpair of the subhypergraph induced on V \ v0 by zeros on
/// v0. Valid because no edge meets v0 in exactly one vertex, so the removed
/// coordinates see only products containing a zero.
inline EigenPair embed_z_eigenpair(const Hypergraph& h, std::span<const std::size_t> v0,
                                   const EigenPair& inner, double tol = kCertifyTolerance) {
  if (v0.empty())
    return inner;
  if (inner.kind != EigenKind::Z)
    throw PreconditionError("embedding expects a Z-eigenpair");
  if (!is_witness(h, v0))
    throw PreconditionError("vertex set is not a not-nicely-connected witness");
  const auto sub = induced_subhypergraph(h, v0);
  if (inner.vector.size() != sub.original.size())
    throw DimensionMismatch(sub.original.size(), inner.vector.size());
  Vector y(h.vertex_count(), 0.0);
  for (std::size_t k = 0; k < sub.original.size(); ++k)
    y[sub.original[k]] = inner.vector[k];
  const auto a = adjacency_tensor(h);
  auto pair = make_pair(a, EigenKind::Z, inner.value, std::move(y));
  certify(a, pair, tol);
  return pair;
}

} // namespace hypertensor
