#include <gtest/gtest.h>

#include <bit>
#include <numeric>
#include <random>

#include "support.hpp"

using namespace hypertensor;
using namespace testing_support;

namespace {

/// Independent witness search: every nonempty proper subset, checked edge by
/// edge with multiplicity.
bool brute_force_has_witness(const Hypergraph& h) {
  const std::size_t n = h.vertex_count();
  const std::size_t bound = h.is_simple() ? (n + 1 >= h.order() ? n + 1 - h.order() : 0) : n - 1;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > bound)
      continue;
    bool ok = true;
    for (const auto& e : h.edges()) {
      std::size_t inside = 0;
      for (auto v : e.vertices())
        inside += (mask >> v) & 1u;
      if (inside == 1) {
        ok = false;
        break;
      }
    }
    if (ok)
      return true;
  }
  return false;
}

} // namespace

TEST(Build, SimpleThreeGraph) {
  const auto h = loose_path();
  EXPECT_EQ(h.vertex_count(), 7u);
  EXPECT_EQ(h.order(), 3u);
  EXPECT_EQ(h.edge_count(), 3u);
  EXPECT_TRUE(h.is_simple());
}

TEST(Build, MultigraphWithHyperloops) {
  const auto h = loop_pair();
  EXPECT_FALSE(h.is_simple());
  EXPECT_TRUE(h.has_hyperloops());
  EXPECT_FALSE(h.has_repeated_edges());
}

TEST(Build, RepeatedEdgeIsNotSimple) {
  const auto h = graph(3, 2, {{1, 2}, {2, 1}});
  EXPECT_TRUE(h.has_repeated_edges());
  EXPECT_FALSE(h.has_hyperloops());
  EXPECT_FALSE(h.is_simple());
}

TEST(Build, RejectsVertexOutOfRange) {
  EXPECT_THROW(graph(3, 3, {{1, 2, 4}}), InvalidInput);
  EXPECT_THROW(graph(3, 3, {{0, 1, 2}}), InvalidInput);
}

TEST(Build, RejectsWrongCardinality) {
  EXPECT_THROW(graph(4, 3, {{1, 2}}), InvalidInput);
  EXPECT_THROW(graph(4, 3, {{1, 2, 3, 4}}), InvalidInput);
}

TEST(Build, RejectsDegenerateParameters) {
  EXPECT_THROW(Hypergraph(0, 3, {}), InvalidInput);
  EXPECT_THROW(Hypergraph(3, 1, {}), InvalidInput);
}

TEST(Build, EdgesAreStoredSorted) {
  const auto h = graph(4, 3, {{3, 1, 2}});
  EXPECT_EQ(h.edges()[0].vertices()[0], 0u);
  EXPECT_EQ(h.edges()[0].vertices()[2], 2u);
  EXPECT_EQ(h, graph(4, 3, {{1, 2, 3}}));
}

TEST(Degree, CompleteGraphVertex) { EXPECT_EQ(degree(complete(4, 3), 0), 3u); }

TEST(Degree, HyperloopCountsOnce) {
  EXPECT_EQ(degree(loop_pair(), 0), 1u);
  EXPECT_EQ(degree(loop_pair(), 1), 2u);
}

TEST(Degree, IsolatedVertexAndRange) {
  const auto h = graph(4, 3, {{1, 2, 3}});
  EXPECT_EQ(degree(h, 3), 0u);
  EXPECT_THROW(degree(h, 4), InvalidInput);
}

TEST(Degree, RepeatedEdgeCountsPerOccurrence) {
  EXPECT_EQ(degree(graph(3, 2, {{1, 2}, {1, 2}}), 0), 2u);
}

TEST(Connected, Examples) {
  EXPECT_TRUE(is_connected(loose_path()));
  EXPECT_FALSE(is_connected(graph(6, 3, {{1, 2, 3}, {4, 5, 6}})));
  EXPECT_TRUE(is_connected(Hypergraph(1, 2, {})));
  EXPECT_FALSE(is_connected(Hypergraph(2, 2, {})));
  EXPECT_FALSE(is_connected(graph(4, 3, {{1, 2, 3}})));
}

TEST(Connected, InvariantUnderRelabelling) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 9, m = 2 + rng() % 3;
    const auto h = random_multigraph(rng, n, m, 1 + rng() % 6);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(is_connected(h), is_connected(relabel(h, perm)));
  }
}

TEST(NicelyConnected, TwoEdgesSharingAVertexHaveAWitness) {
  // {1,2} meets edge 123 twice and 345 not at all, and |V0| = 2 <= n-m+1.
  const auto r = is_nicely_connected(two_edges());
  EXPECT_FALSE(r.nicely_connected);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, (VertexSet{0, 1}));
}

TEST(NicelyConnected, SixVertexGraphWitness) {
  const auto h = six_vertex();
  const auto r = is_nicely_connected(h);
  EXPECT_FALSE(r.nicely_connected);
  ASSERT_TRUE(r.witness);
  // Smallest, then lexicographically first witness.
  EXPECT_EQ(*r.witness, (VertexSet{1, 2}));
  EXPECT_TRUE(is_witness(h, VertexSet{3, 4}));
}

TEST(NicelyConnected, LoosePathWitness) {
  const auto r = is_nicely_connected(loose_path());
  EXPECT_FALSE(r.nicely_connected);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, (VertexSet{0, 1}));
  EXPECT_TRUE(is_witness(loose_path(), VertexSet{5, 6}));
}

TEST(NicelyConnected, Multigraphs) {
  EXPECT_FALSE(is_nicely_connected(loop_pair()).nicely_connected);
  EXPECT_FALSE(is_nicely_connected(regular_loops()).nicely_connected);
  EXPECT_EQ(*is_nicely_connected(regular_loops()).witness, (VertexSet{0}));
}

TEST(NicelyConnected, CompleteGraphs) {
  EXPECT_TRUE(is_nicely_connected(complete(4, 3)).nicely_connected);
  EXPECT_TRUE(is_nicely_connected(complete(5, 3)).nicely_connected);
  EXPECT_TRUE(is_nicely_connected(single_4edge()).nicely_connected);
}

TEST(NicelyConnected, SizeLimit) {
  EXPECT_THROW(is_nicely_connected(Hypergraph(25, 2, {})), SearchLimitExceeded);
  SearchLimits big;
  big.max_exhaustive_n = 30;
  EXPECT_FALSE(is_nicely_connected(Hypergraph(25, 2, {}), big).nicely_connected);
}

TEST(NicelyConnected, MatchesBruteForceAndWitnessesVerify) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 7, m = 2 + rng() % 3;
    const auto h = (trial % 2 == 0 && m <= n) ? random_simple(rng, n, m, 1 + rng() % 6)
                                              : random_multigraph(rng, n, m, 1 + rng() % 6);
    const auto r = is_nicely_connected(h);
    EXPECT_EQ(!r.nicely_connected, brute_force_has_witness(h));
    if (r.witness) {
      EXPECT_TRUE(is_witness(h, *r.witness));
      if (h.is_simple())
        EXPECT_LE(r.witness->size(), h.vertex_count() - h.order() + 1);
    }
    if (r.nicely_connected)
      EXPECT_TRUE(is_connected(h));
  }
}

TEST(Witness, RejectsInvalidSets) {
  const auto h = loose_path();
  EXPECT_FALSE(is_witness(h, VertexSet{}));
  EXPECT_FALSE(is_witness(h, VertexSet{0}));        // edge 123 meets {1} once
  EXPECT_FALSE(is_witness(h, VertexSet{0, 0}));     // repeated vertex
  EXPECT_FALSE(is_witness(h, VertexSet{0, 1, 2, 3, 4, 5})); // above n-m+1
}

TEST(Regular, Examples) {
  EXPECT_EQ(is_regular(complete(4, 3)), 3u);
  EXPECT_EQ(is_regular(six_vertex()), 2u);
  EXPECT_FALSE(is_regular(two_edges()));
  EXPECT_EQ(is_regular(complete(5, 3)), 6u);
  EXPECT_EQ(is_regular(regular_loops()), 2u);
}

TEST(Complete, Examples) {
  EXPECT_TRUE(is_complete(complete(4, 3)));
  EXPECT_FALSE(is_complete(loose_path()));
  EXPECT_TRUE(is_complete(graph(3, 3, {{1, 2, 3}})));
  EXPECT_FALSE(is_complete(graph(3, 2, {{1, 2}, {1, 3}, {2, 3}, {1, 2}})));
  EXPECT_THROW(is_complete(loop_pair()), PreconditionError);
}

TEST(Partition, SingleEdge) {
  const auto p = find_m_partition(single_4edge());
  ASSERT_TRUE(p);
  EXPECT_EQ(*p, (Partition{{0}, {1}, {2}, {3}}));
  EXPECT_TRUE(is_m_partition(single_4edge(), *p));
}

TEST(Partition, NonPartiteGraphs) {
  EXPECT_FALSE(find_m_partition(complete(4, 3)));
  EXPECT_FALSE(find_m_partition(graph(3, 2, {{1, 2}, {2, 3}, {1, 3}})));
  EXPECT_THROW(find_m_partition(loop_pair()), PreconditionError);
}

TEST(Partition, LoosePathIsTripartite) {
  const auto p = find_m_partition(loose_path());
  ASSERT_TRUE(p);
  EXPECT_TRUE(is_m_partition(loose_path(), *p));
}

TEST(Partition, BudgetExceededIsReported) {
  SearchLimits tiny;
  tiny.partition_node_budget = 2;
  EXPECT_THROW(find_m_partition(complete(5, 3), tiny), SearchLimitExceeded);
}

TEST(Partition, ResultsAreValidAndMatchBruteForce) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = 2 + rng() % 2, n = m + rng() % 5;
    const auto h = random_simple(rng, n, m, 1 + rng() % 5);
    const auto p = find_m_partition(h);
    // Brute force over all colourings.
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k)
      total *= m;
    bool exists = false;
    for (std::size_t code = 0; code < total && !exists; ++code) {
      Partition q(m);
      std::size_t c = code;
      for (std::size_t v = 0; v < n; ++v, c /= m)
        q[c % m].push_back(v);
      exists = is_m_partition(h, q);
    }
    EXPECT_EQ(p.has_value(), exists);
    if (p)
      EXPECT_TRUE(is_m_partition(h, *p));
  }
}

TEST(Induced, RemovesWitness) {
  const auto sub = induced_subhypergraph(loose_path(), VertexSet{0, 1});
  EXPECT_EQ(sub.graph.vertex_count(), 5u);
  EXPECT_EQ(sub.graph, graph(5, 3, {{1, 2, 3}, {3, 4, 5}}));
  EXPECT_EQ(sub.original, (std::vector<std::size_t>{2, 3, 4, 5, 6}));
}

TEST(Induced, SixVertexGraph) {
  const auto sub = induced_subhypergraph(six_vertex(), VertexSet{3, 4});
  EXPECT_EQ(sub.original, (std::vector<std::size_t>{0, 1, 2, 5}));
  // 123 and 236 become 123 and 234 on {1,2,3,6}.
  EXPECT_EQ(sub.graph, graph(4, 3, {{1, 2, 3}, {2, 3, 4}}));
}

TEST(Induced, EmptyRemovalAndFullRemoval) {
  const auto h = six_vertex();
  EXPECT_EQ(induced_subhypergraph(h, VertexSet{}).graph, h);
  EXPECT_THROW(induced_subhypergraph(h, VertexSet{0, 1, 2, 3, 4, 5}), PreconditionError);
  EXPECT_THROW(induced_subhypergraph(h, VertexSet{6}), InvalidInput);
}

TEST(Structure, DegreeSumForSimpleGraphs) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + rng() % 3, n = m + rng() % 6;
    const auto h = random_simple(rng, n, m, 1 + rng() % 8);
    const auto d = degrees(h);
    EXPECT_EQ(std::accumulate(d.begin(), d.end(), std::size_t{0}), m * h.edge_count());
  }
}

TEST(Structure, ReportFields) {
  const auto r = analyze_structure(six_vertex());
  EXPECT_TRUE(r.connected);
  EXPECT_EQ(r.nicely_connected, false);
  EXPECT_EQ(r.regular_degree, 2u);
  EXPECT_EQ(r.max_degree, 2u);
  EXPECT_FALSE(r.complete);
  EXPECT_TRUE(r.undecided.empty());
  EXPECT_EQ(r.m_partite, true);
  EXPECT_TRUE(is_m_partition(six_vertex(), *r.partition));
}

TEST(Structure, UndecidedPredicatesAreNamed) {
  SearchLimits lim;
  lim.max_exhaustive_n = 3;
  const auto r = analyze_structure(loose_path(), lim);
  EXPECT_FALSE(r.nicely_connected);
  ASSERT_EQ(r.undecided.size(), 1u);
  EXPECT_NE(r.undecided[0].find("nicely-connected"), std::string::npos);
}

TEST(Structure, MultigraphSkipsPartition) {
  const auto r = analyze_structure(regular_loops());
  EXPECT_FALSE(r.simple);
  EXPECT_FALSE(r.m_partite);
  EXPECT_FALSE(r.complete);
}
