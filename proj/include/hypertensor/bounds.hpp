#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>

#include "hypertensor/eigenpair.hpp"
#include "hypertensor/hypergraph.hpp"
#include "hypertensor/tensor.hpp"

namespace hypertensor {

/// Bounds on the largest Z-eigenvalue lambda* of an adjacency tensor.
///
/// lower_paper is sum(deg) / (n^{m/2} (m-1)!), the printed lower bound.
/// lower_sharp is A x^m at the uniform unit vector, the value that bound is
/// derived from; for simple m-graphs the two differ by exactly (m-1)!.
struct BoundsReport {
  double lower_paper = 0.0;
  double lower_sharp = 0.0;
  double upper_degree = 0.0; // D * sqrt(n)
  double upper_edges = 0.0;  // |E|

  double upper() const { return std::min(upper_degree, upper_edges); }

  /// lower_paper <= lower_sharp <= lambda <= min(upper_degree, upper_edges),
  /// with `slack` absolute tolerance on each comparison.
  bool sandwiches(double lambda, double slack = 1e-9) const {
    return lower_paper <= lower_sharp + slack && lower_sharp <= lambda + slack &&
           lambda <= upper() + slack;
  }
};

inline BoundsReport z_bounds(const Hypergraph& h) {
  BoundsReport b;
  if (h.edge_count() == 0)
    return b;
  const std::size_t n = h.vertex_count(), m = h.order();
  const auto deg = degrees(h);
  const double deg_sum = static_cast<double>(std::accumulate(deg.begin(), deg.end(), std::size_t{0}));
  const double dn = static_cast<double>(n);
  b.lower_paper = deg_sum / (std::pow(dn, 0.5 * static_cast<double>(m)) * detail::factorial(m - 1));
  const Vector uniform(n, 1.0 / std::sqrt(dn));
  b.lower_sharp = poly_eval(adjacency_tensor(h), uniform);
  b.upper_degree = static_cast<double>(*std::max_element(deg.begin(), deg.end())) * std::sqrt(dn);
  b.upper_edges = static_cast<double>(h.edge_count());
  return b;
}

/// For a simple r-regular m-graph, (r n^{-(m-2)/2}, 1/sqrt(n)) is a Z-eigenpair.
/// Empty when H is not simple or not regular, or when the pair fails its
/// residual check at 1e-10.
inline std::optional<EigenPair> closed_form_regular_z(const Hypergraph& h) {
  if (!h.is_simple())
    return std::nullopt;
  const auto r = is_regular(h);
  if (!r)
    return std::nullopt;
  const double dn = static_cast<double>(h.vertex_count());
  const double lambda =
      static_cast<double>(*r) * std::pow(dn, -0.5 * (static_cast<double>(h.order()) - 2.0));
  auto pair = make_pair(adjacency_tensor(h), EigenKind::Z, lambda,
                        Vector(h.vertex_count(), 1.0 / std::sqrt(dn)));
  if (pair.residual > 1e-10)
    return std::nullopt;
  return pair;
}

} // namespace hypertensor
