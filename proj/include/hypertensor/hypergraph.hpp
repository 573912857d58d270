#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypertensor/detail/combinatorics.hpp"
#include "hypertensor/detail/isolating_subset.hpp"
#include "hypertensor/error.hpp"

namespace hypertensor {

/// Sorted list of 0-based vertex indices.
using VertexSet = std::vector<std::size_t>;

/// One part per color; part k lists the vertices assigned to it.
using Partition = std::vector<VertexSet>;

/// Caps for the exponential searches. Exceeding a cap raises
/// SearchLimitExceeded instead of returning a guess.
struct SearchLimits {
  std::size_t max_exhaustive_n = 24;
  std::uint64_t partition_node_budget = 2'000'000;
};

/// An edge of a uniform multi-hypergraph: a sorted multiset of 0-based
/// vertices. Repeats encode hyperloops.
class Edge {
public:
  Edge() = default;
  explicit Edge(std::vector<std::size_t> vertices) : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
  }

  std::span<const std::size_t> vertices() const noexcept { return vertices_; }
  std::size_t cardinality() const noexcept { return vertices_.size(); }

  bool contains(std::size_t v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
  }

  bool has_repeats() const {
    return std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end();
  }

  /// Number of entries (with multiplicity) whose vertex is flagged in `member`.
  std::size_t count_in(std::span<const char> member) const {
    std::size_t c = 0;
    for (auto v : vertices_)
      c += member[v] ? 1 : 0;
    return c;
  }

  auto operator<=>(const Edge&) const = default;

private:
  std::vector<std::size_t> vertices_;
};

/// Uniform multi-hypergraph on vertices {0, ..., n-1}. Immutable once built.
class Hypergraph {
public:
  /// Validates and stores `edges` (0-based vertex multisets).
  Hypergraph(std::size_t n, std::size_t m, std::vector<Edge> edges)
      : n_(n), m_(m), edges_(std::move(edges)) {
    if (n_ < 1)
      throw InvalidInput("hypergraph needs at least one vertex");
    if (m_ < 2)
      throw InvalidInput("uniformity order must be at least 2");
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      const auto& e = edges_[k];
      if (e.cardinality() != m_)
        throw InvalidInput("edge " + std::to_string(k + 1) + " has cardinality " +
                           std::to_string(e.cardinality()) + ", expected " +
                           std::to_string(m_));
      for (auto v : e.vertices())
        if (v >= n_)
          throw InvalidInput("edge " + std::to_string(k + 1) + " uses vertex " +
                             std::to_string(v + 1) + " outside [1, " +
                             std::to_string(n_) + "]");
    }
    hyperloops_ = std::any_of(edges_.begin(), edges_.end(),
                              [](const Edge& e) { return e.has_repeats(); });
    auto sorted = edges_;
    std::sort(sorted.begin(), sorted.end());
    repeated_edges_ = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
  }

  /// Builds from 1-based vertex lists, as they appear in files and examples.
  static Hypergraph from_one_based(std::size_t n, std::size_t m,
                                   const std::vector<std::vector<std::size_t>>& edges) {
    std::vector<Edge> zero_based;
    zero_based.reserve(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
      std::vector<std::size_t> vs;
      vs.reserve(edges[k].size());
      for (auto v : edges[k]) {
        if (v < 1 || v > n)
          throw InvalidInput("edge " + std::to_string(k + 1) + " uses vertex " +
                             std::to_string(v) + " outside [1, " + std::to_string(n) + "]");
        vs.push_back(v - 1);
      }
      zero_based.emplace_back(std::move(vs));
    }
    return Hypergraph(n, m, std::move(zero_based));
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t order() const noexcept { return m_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  bool has_hyperloops() const noexcept { return hyperloops_; }
  bool has_repeated_edges() const noexcept { return repeated_edges_; }

  /// True iff no edge repeats a vertex and no edge appears twice.
  bool is_simple() const noexcept { return !hyperloops_ && !repeated_edges_; }

  bool operator==(const Hypergraph& other) const {
    if (n_ != other.n_ || m_ != other.m_ || edges_.size() != other.edges_.size())
      return false;
    auto a = edges_, b = other.edges_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }

private:
  std::size_t n_;
  std::size_t m_;
  std::vector<Edge> edges_;
  bool hyperloops_ = false;
  bool repeated_edges_ = false;
};

namespace detail {

inline void check_vertex(const Hypergraph& h, std::size_t v) {
  if (v >= h.vertex_count())
    throw InvalidInput("vertex " + std::to_string(v + 1) + " outside [1, " +
                       std::to_string(h.vertex_count()) + "]");
}

inline std::vector<std::vector<std::size_t>> edge_multisets(const Hypergraph& h) {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(h.edge_count());
  for (const auto& e : h.edges())
    out.emplace_back(e.vertices().begin(), e.vertices().end());
  return out;
}

inline std::vector<std::vector<std::size_t>> incidence(const Hypergraph& h) {
  std::vector<std::vector<std::size_t>> inc(h.vertex_count());
  for (std::size_t k = 0; k < h.edge_count(); ++k) {
    const auto vs = h.edges()[k].vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (i == 0 || vs[i] != vs[i - 1])
        inc[vs[i]].push_back(k);
  }
  return inc;
}

} // namespace detail

/// Number of edges containing v. An edge counts once even when v repeats
/// inside it; a repeated edge counts once per occurrence.
inline std::size_t degree(const Hypergraph& h, std::size_t v) {
  detail::check_vertex(h, v);
  return static_cast<std::size_t>(std::count_if(
      h.edges().begin(), h.edges().end(), [v](const Edge& e) { return e.contains(v); }));
}

inline std::vector<std::size_t> degrees(const Hypergraph& h) {
  std::vector<std::size_t> d(h.vertex_count(), 0);
  for (const auto& e : h.edges()) {
    const auto vs = e.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (i == 0 || vs[i] != vs[i - 1])
        ++d[vs[i]];
  }
  return d;
}

/// Chain connectivity, computed as reachability in the vertex/edge incidence
/// graph. Removing repeated vertices or edges from a walk yields a chain, so
/// the two notions agree.
inline bool is_connected(const Hypergraph& h) {
  const std::size_t n = h.vertex_count();
  const auto inc = detail::incidence(h);
  std::vector<char> seen_vertex(n, 0), seen_edge(h.edge_count(), 0);
  std::vector<std::size_t> stack{0};
  seen_vertex[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto k : inc[v]) {
      if (seen_edge[k])
        continue;
      seen_edge[k] = 1;
      for (auto u : h.edges()[k].vertices()) {
        if (!seen_vertex[u]) {
          seen_vertex[u] = 1;
          ++reached;
          stack.push_back(u);
        }
      }
    }
  }
  return reached == n;
}

/// Largest admissible witness size: n-m+1 for simple hypergraphs, n-1
/// (nonempty proper subsets) otherwise.
inline std::size_t witness_size_bound(const Hypergraph& h) {
  const std::size_t n = h.vertex_count();
  if (h.is_simple())
    return n + 1 >= h.order() ? std::min(n - 1, n + 1 - h.order()) : 0;
  return n - 1;
}

/// Checks that `v0` certifies H is not nicely-connected: nonempty, proper,
/// within the size bound for simple hypergraphs, and no edge has exactly one
/// of its vertices (with multiplicity) inside v0.
inline bool is_witness(const Hypergraph& h, std::span<const std::size_t> v0) {
  const std::size_t n = h.vertex_count();
  std::vector<char> member(n, 0);
  for (auto v : v0) {
    if (v >= n || member[v])
      return false;
    member[v] = 1;
  }
  if (v0.empty() || v0.size() > witness_size_bound(h))
    return false;
  return std::none_of(h.edges().begin(), h.edges().end(),
                      [&](const Edge& e) { return e.count_in(member) == 1; });
}

struct NicelyConnectedResult {
  bool nicely_connected = true;
  std::optional<VertexSet> witness;
};

/// Exhaustive search for a witness that H is not nicely-connected. Returns the
/// lexicographically first witness of minimum size when one exists.
inline NicelyConnectedResult is_nicely_connected(const Hypergraph& h,
                                                 const SearchLimits& limits = {}) {
  if (h.vertex_count() > limits.max_exhaustive_n)
    throw SearchLimitExceeded("nicely-connected search needs n <= " +
                              std::to_string(limits.max_exhaustive_n) + ", got n = " +
                              std::to_string(h.vertex_count()));
  const auto groups = detail::edge_multisets(h);
  detail::IsolatingSubsetSearch search(h.vertex_count(), groups);
  auto found = search.find(witness_size_bound(h));
  if (!found)
    return {};
  return {false, std::move(found)};
}

/// The common degree r when every vertex has degree r.
inline std::optional<std::size_t> is_regular(const Hypergraph& h) {
  const auto d = degrees(h);
  if (std::adjacent_find(d.begin(), d.end(), std::not_equal_to<>()) != d.end())
    return std::nullopt;
  return d.front();
}

/// True iff every m-subset of V is an edge, each exactly once.
inline bool is_complete(const Hypergraph& h) {
  if (h.has_hyperloops())
    throw PreconditionError("completeness is defined for hypergraphs without hyperloops");
  if (h.has_repeated_edges())
    return false;
  return h.edge_count() == detail::binomial(h.vertex_count(), h.order());
}

namespace detail {

class PartitionSearch {
public:
  PartitionSearch(const Hypergraph& h, std::uint64_t budget)
      : h_(h), parts_(h.order()), budget_(budget), inc_(incidence(h)),
        color_(h.vertex_count(), kUnassigned) {
    // Visit vertices component by component in BFS order so that each new
    // vertex usually shares an edge with an already colored one.
    std::vector<char> queued(h.vertex_count(), 0);
    for (std::size_t s = 0; s < h.vertex_count(); ++s) {
      if (queued[s])
        continue;
      queued[s] = 1;
      order_.push_back(s);
      for (std::size_t head = order_.size() - 1; head < order_.size(); ++head) {
        for (auto k : inc_[order_[head]])
          for (auto u : h.edges()[k].vertices())
            if (!queued[u]) {
              queued[u] = 1;
              order_.push_back(u);
            }
      }
    }
  }

  std::optional<Partition> run() {
    if (!assign(0, 0))
      return std::nullopt;
    Partition p(parts_);
    for (std::size_t v = 0; v < color_.size(); ++v)
      p[color_[v]].push_back(v);
    return p;
  }

private:
  static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

  bool consistent(std::size_t v) const {
    for (auto k : inc_[v])
      for (auto u : h_.edges()[k].vertices())
        if (u != v && color_[u] == color_[v])
          return false;
    return true;
  }

  bool assign(std::size_t pos, std::size_t used) {
    if (pos == order_.size())
      return true;
    if (++nodes_ > budget_)
      throw SearchLimitExceeded("m-partition search undecided at node budget " +
                                std::to_string(budget_));
    const auto v = order_[pos];
    // Parts are interchangeable: a vertex may open at most one new part.
    const std::size_t limit = std::min(parts_, used + 1);
    for (std::size_t c = 0; c < limit; ++c) {
      color_[v] = c;
      if (consistent(v) && assign(pos + 1, std::max(used, c + 1)))
        return true;
    }
    color_[v] = kUnassigned;
    return false;
  }

  const Hypergraph& h_;
  std::size_t parts_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<std::size_t>> inc_;
  std::vector<std::size_t> color_;
  std::vector<std::size_t> order_;
};

} // namespace detail

/// Finds V = V1 u ... u Vm with every edge meeting each part exactly once.
/// Backtracking with a node budget; throws SearchLimitExceeded when undecided.
inline std::optional<Partition> find_m_partition(const Hypergraph& h,
                                                 const SearchLimits& limits = {}) {
  if (h.has_hyperloops())
    throw PreconditionError("m-partiteness is defined for hypergraphs without hyperloops");
  return detail::PartitionSearch(h, limits.partition_node_budget).run();
}

/// Checks the defining property of an m-partition directly.
inline bool is_m_partition(const Hypergraph& h, const Partition& p) {
  if (p.size() != h.order())
    return false;
  std::vector<std::size_t> part(h.vertex_count(), h.order());
  for (std::size_t c = 0; c < p.size(); ++c)
    for (auto v : p[c]) {
      if (v >= h.vertex_count() || part[v] != h.order())
        return false;
      part[v] = c;
    }
  if (std::count(part.begin(), part.end(), h.order()) != 0)
    return false;
  for (const auto& e : h.edges()) {
    std::vector<std::size_t> hits(h.order(), 0);
    for (auto v : e.vertices())
      ++hits[part[v]];
    if (std::any_of(hits.begin(), hits.end(), [](std::size_t c) { return c != 1; }))
      return false;
  }
  return true;
}

struct InducedSubhypergraph {
  Hypergraph graph;
  /// original[k] is the vertex of the parent hypergraph that became vertex k.
  std::vector<std::size_t> original;
};

/// Hypergraph on V \ removed keeping exactly the edges that avoid `removed`.
inline InducedSubhypergraph induced_subhypergraph(const Hypergraph& h,
                                                  std::span<const std::size_t> removed) {
  const std::size_t n = h.vertex_count();
  std::vector<char> gone(n, 0);
  for (auto v : removed) {
    detail::check_vertex(h, v);
    gone[v] = 1;
  }
  std::vector<std::size_t> relabel(n, n), original;
  for (std::size_t v = 0; v < n; ++v)
    if (!gone[v]) {
      relabel[v] = original.size();
      original.push_back(v);
    }
  if (original.empty())
    throw PreconditionError("cannot remove every vertex");
  std::vector<Edge> kept;
  for (const auto& e : h.edges()) {
    if (e.count_in(gone) != 0)
      continue;
    std::vector<std::size_t> vs;
    for (auto v : e.vertices())
      vs.push_back(relabel[v]);
    kept.emplace_back(std::move(vs));
  }
  return {Hypergraph(original.size(), h.order(), std::move(kept)), std::move(original)};
}

/// Everything the spectral theorems condition on, computed in one pass.
/// Optional fields are empty when not applicable; `undecided` names the
/// predicates whose search exceeded a limit.
struct StructureReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t edge_count = 0;
  bool simple = true;
  bool connected = false;
  std::optional<bool> nicely_connected;
  std::optional<VertexSet> witness;
  std::optional<std::size_t> regular_degree;
  bool complete = false;
  std::optional<bool> m_partite;
  std::optional<Partition> partition;
  std::vector<std::size_t> degrees;
  std::size_t max_degree = 0;
  std::vector<std::string> undecided;
};

inline StructureReport analyze_structure(const Hypergraph& h, const SearchLimits& limits = {}) {
  StructureReport r;
  r.n = h.vertex_count();
  r.m = h.order();
  r.edge_count = h.edge_count();
  r.simple = h.is_simple();
  r.connected = is_connected(h);
  r.degrees = degrees(h);
  r.max_degree = *std::max_element(r.degrees.begin(), r.degrees.end());
  r.regular_degree = is_regular(h);
  r.complete = !h.has_hyperloops() && is_complete(h);
  try {
    auto nc = is_nicely_connected(h, limits);
    r.nicely_connected = nc.nicely_connected;
    r.witness = std::move(nc.witness);
  } catch (const SearchLimitExceeded& e) {
    r.undecided.push_back(e.what());
  }
  if (!h.has_hyperloops()) {
    try {
      r.partition = find_m_partition(h, limits);
      r.m_partite = r.partition.has_value();
    } catch (const SearchLimitExceeded& e) {
      r.undecided.push_back(e.what());
    }
  }
  return r;
}

} // namespace hypertensor
