#pragma once

// Shared fixtures for the test suites: small named hypergraphs, an
// independent dense-tensor oracle, and random instance generators.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "hypertensor/hypertensor.hpp"

namespace testing_support {

using hypertensor::Hypergraph;
using hypertensor::Vector;

inline Hypergraph graph(std::size_t n, std::size_t m,
                        const std::vector<std::vector<std::size_t>>& one_based) {
  return Hypergraph::from_one_based(n, m, one_based);
}

/// Two 3-edges sharing vertex 3.
inline Hypergraph two_edges() { return graph(5, 3, {{1, 2, 3}, {3, 4, 5}}); }
/// 2-regular 3-graph on six vertices.
inline Hypergraph six_vertex() { return graph(6, 3, {{1, 2, 3}, {2, 3, 6}, {1, 4, 5}, {4, 5, 6}}); }
/// Loose path 123, 345, 567.
inline Hypergraph loose_path() { return graph(7, 3, {{1, 2, 3}, {3, 4, 5}, {5, 6, 7}}); }
/// Multigraph 112, 222.
inline Hypergraph loop_pair() { return graph(2, 3, {{1, 1, 2}, {2, 2, 2}}); }
/// 2-regular multigraph 111, 112, 222.
inline Hypergraph regular_loops() { return graph(2, 3, {{1, 1, 1}, {1, 1, 2}, {2, 2, 2}}); }
inline Hypergraph single_4edge() { return graph(4, 4, {{1, 2, 3, 4}}); }

/// Complete simple m-graph on n vertices.
inline Hypergraph complete(std::size_t n, std::size_t m) {
  std::vector<hypertensor::Edge> edges;
  std::vector<char> pick(n, 0);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(m), pick.end(), 1);
  do {
    std::vector<std::size_t> vs;
    for (std::size_t v = 0; v < n; ++v)
      if (pick[v])
        vs.push_back(v);
    edges.emplace_back(std::move(vs));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return Hypergraph(n, m, std::move(edges));
}

/// The adjacency tensor materialized as a dense n^m array: every ordering of
/// every edge receives 1/(m-1)!, repeated edges add up. Built by explicit
/// permutation enumeration, sharing no code with the sparse implementation.
class DenseTensor {
public:
  explicit DenseTensor(const Hypergraph& h) : n_(h.vertex_count()), m_(h.order()) {
    std::size_t size = 1;
    for (std::size_t k = 0; k < m_; ++k)
      size *= n_;
    data_.assign(size, 0.0);
    double fact = 1.0;
    for (std::size_t k = 2; k < m_; ++k)
      fact *= static_cast<double>(k);
    for (const auto& e : h.edges()) {
      std::vector<std::size_t> t(e.vertices().begin(), e.vertices().end());
      std::sort(t.begin(), t.end());
      do
        data_[flat(t)] += 1.0 / fact;
      while (std::next_permutation(t.begin(), t.end()));
    }
  }

  double at(const std::vector<std::size_t>& t) const { return data_[flat(t)]; }

  /// (A x^{m-1})_i = sum over all i2..im of a_{i i2..im} x_{i2}..x_{im}.
  Vector apply(const Vector& x) const {
    Vector out(n_, 0.0);
    std::vector<std::size_t> t(m_, 0);
    for (std::size_t idx = 0; idx < data_.size(); ++idx) {
      unflat(idx, t);
      if (data_[idx] == 0.0)
        continue;
      double p = data_[idx];
      for (std::size_t q = 1; q < m_; ++q)
        p *= x[t[q]];
      out[t[0]] += p;
    }
    return out;
  }

  double poly(const Vector& x) const {
    const auto ax = apply(x);
    return std::inner_product(ax.begin(), ax.end(), x.begin(), 0.0);
  }

  double z_residual(double lambda, const Vector& x) const {
    const auto ax = apply(x);
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      s += (ax[i] - lambda * x[i]) * (ax[i] - lambda * x[i]);
    return std::sqrt(s);
  }

  double h_residual(double lambda, const Vector& x) const {
    const auto ax = apply(x);
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double r = ax[i] - lambda * std::pow(x[i], static_cast<double>(m_ - 1));
      s += r * r;
    }
    return std::sqrt(s);
  }

  std::size_t size() const { return data_.size(); }

private:
  std::size_t flat(const std::vector<std::size_t>& t) const {
    std::size_t idx = 0;
    for (auto v : t)
      idx = idx * n_ + v;
    return idx;
  }

  void unflat(std::size_t idx, std::vector<std::size_t>& t) const {
    for (std::size_t q = m_; q-- > 0;) {
      t[q] = idx % n_;
      idx /= n_;
    }
  }

  std::size_t n_, m_;
  Vector data_;
};

/// Random m-multigraph: each edge is m independent uniform vertex draws.
inline Hypergraph random_multigraph(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                    std::size_t edges) {
  std::uniform_int_distribution<std::size_t> v(0, n - 1);
  std::vector<hypertensor::Edge> es;
  for (std::size_t k = 0; k < edges; ++k) {
    std::vector<std::size_t> vs(m);
    for (auto& x : vs)
      x = v(rng);
    es.emplace_back(std::move(vs));
  }
  return Hypergraph(n, m, std::move(es));
}

/// Random simple m-graph with distinct edges (fewer if the draws collide).
inline Hypergraph random_simple(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                std::size_t edges) {
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t tries = 0; seen.size() < edges && tries < 50 * edges + 50; ++tries) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::size_t> vs(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(m));
    std::sort(vs.begin(), vs.end());
    seen.insert(vs);
  }
  std::vector<hypertensor::Edge> es;
  for (const auto& e : seen)
    es.emplace_back(e);
  return Hypergraph(n, m, std::move(es));
}

/// Applies a vertex relabelling v -> perm[v].
inline Hypergraph relabel(const Hypergraph& h, const std::vector<std::size_t>& perm) {
  std::vector<hypertensor::Edge> es;
  for (const auto& e : h.edges()) {
    std::vector<std::size_t> vs;
    for (auto v : e.vertices())
      vs.push_back(perm[v]);
    es.emplace_back(std::move(vs));
  }
  return Hypergraph(h.vertex_count(), h.order(), std::move(es));
}

/// Connected r-regular simple m-graph: union of random translation orbits
/// {S + i mod n} of base m-sets S, relabelled at random. Retries until the
/// result is simple, connected and regular.
inline Hypergraph random_regular(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::uniform_int_distribution<std::size_t> orbit_count(1, 2);
  while (true) {
    std::set<std::vector<std::size_t>> edges;
    const std::size_t k = orbit_count(rng);
    std::vector<std::size_t> base(n);
    std::iota(base.begin(), base.end(), 0);
    for (std::size_t o = 0; o < k; ++o) {
      std::shuffle(base.begin(), base.end(), rng);
      for (std::size_t shift = 0; shift < n; ++shift) {
        std::vector<std::size_t> e;
        for (std::size_t q = 0; q < m; ++q)
          e.push_back((base[q] + shift) % n);
        std::sort(e.begin(), e.end());
        edges.insert(e);
      }
    }
    std::vector<hypertensor::Edge> es;
    for (const auto& e : edges)
      es.emplace_back(e);
    Hypergraph h(n, m, std::move(es));
    if (!h.is_simple() || !hypertensor::is_connected(h) || !hypertensor::is_regular(h))
      continue;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return relabel(h, perm);
  }
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0,
                            double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector x(n);
  for (auto& v : x)
    v = u(rng);
  return x;
}

/// The multiset {0, +-a, +-b, ...} from its nonnegative half.
inline std::vector<double> symmetric_set(const std::vector<double>& positive, bool with_zero) {
  std::vector<double> out;
  for (double v : positive) {
    out.push_back(v);
    out.push_back(-v);
  }
  if (with_zero)
    out.push_back(0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

} // namespace testing_support
