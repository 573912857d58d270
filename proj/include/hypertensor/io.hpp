#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hypertensor/detail/combinatorics.hpp"
#include "hypertensor/error.hpp"
#include "hypertensor/hypergraph.hpp"

namespace hypertensor {

// Hypergraph text format:
//
//   # comment
//   uniform <m> <n>
//   <v1> <v2> ... <vm>     one edge per line, 1-based, repeats allowed
//
// Anything after '#' is ignored, as are blank lines. A vertex repeated within
// a line is a hyperloop; a repeated line is a repeated edge.

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
      ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r')
      ++i;
    if (i > start)
      out.push_back(s.substr(start, i - start));
  }
  return out;
}

inline std::size_t parse_count(std::string_view tok, std::size_t line, const char* what) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
  return v;
}

} // namespace detail

inline Hypergraph parse_hgr(std::string_view text) {
  std::size_t m = 0, n = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    const auto tok = detail::split_ws(line);
    if (tok.empty())
      continue;
    if (!have_header) {
      if (tok.size() != 3 || tok[0] != "uniform")
        throw ParseError(line_no, "expected header 'uniform <m> <n>'");
      m = detail::parse_count(tok[1], line_no, "uniformity m");
      n = detail::parse_count(tok[2], line_no, "vertex count n");
      if (m < 2)
        throw ParseError(line_no, "uniformity m must be at least 2");
      if (n < 1)
        throw ParseError(line_no, "vertex count n must be at least 1");
      have_header = true;
      continue;
    }
    if (tok.size() != m)
      throw ParseError(line_no, "edge has " + std::to_string(tok.size()) + " vertices, expected " +
                                    std::to_string(m));
    std::vector<std::size_t> vs;
    vs.reserve(m);
    for (auto t : tok) {
      const auto v = detail::parse_count(t, line_no, "vertex index");
      if (v < 1 || v > n)
        throw ParseError(line_no, "vertex " + std::to_string(v) + " outside [1, " +
                                      std::to_string(n) + "]");
      vs.push_back(v - 1);
    }
    edges.emplace_back(std::move(vs));
  }
  if (!have_header)
    throw ParseError(line_no, "missing header 'uniform <m> <n>'");
  return Hypergraph(n, m, std::move(edges));
}

/// Inverse of parse_hgr, edges in stored order.
inline std::string render_hgr(const Hypergraph& h) {
  std::ostringstream os;
  os << "uniform " << h.order() << ' ' << h.vertex_count() << '\n';
  for (const auto& e : h.edges()) {
    bool first = true;
    for (auto v : e.vertices()) {
      os << (first ? "" : " ") << v + 1;
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

/// Random m-uniform hypergraph, deterministic in `seed`. With `simple` the
/// edges are distinct m-subsets drawn uniformly; otherwise each edge is a
/// sorted draw of m vertices with replacement and edges may repeat.
inline Hypergraph generate_hypergraph(std::size_t n, std::size_t m, std::size_t edge_count,
                                      bool simple, std::uint64_t seed) {
  if (n < 1)
    throw InvalidInput("generator needs n >= 1");
  if (m < 2)
    throw InvalidInput("generator needs m >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<Edge> edges;
  if (!simple) {
    for (std::size_t k = 0; k < edge_count; ++k) {
      std::vector<std::size_t> vs(m);
      for (auto& v : vs)
        v = pick(rng);
      edges.emplace_back(std::move(vs));
    }
    return Hypergraph(n, m, std::move(edges));
  }
  if (m > n)
    throw InvalidInput("no m-subsets exist when m > n");
  const std::uint64_t total = detail::binomial(n, m);
  if (edge_count > total)
    throw InvalidInput("requested " + std::to_string(edge_count) + " edges but only " +
                       std::to_string(total) + " distinct m-subsets exist");
  std::set<std::vector<std::size_t>> chosen;
  if (total <= 200000) {
    // Enumerate every m-subset, then take a uniform random selection.
    std::vector<std::vector<std::size_t>> all;
    std::vector<std::size_t> c(m);
    for (std::size_t i = 0; i < m; ++i)
      c[i] = i;
    while (true) {
      all.push_back(c);
      std::size_t i = m;
      while (i > 0 && c[i - 1] == n - m + i - 1)
        --i;
      if (i == 0)
        break;
      ++c[i - 1];
      for (std::size_t j = i; j < m; ++j)
        c[j] = c[j - 1] + 1;
    }
    for (std::size_t k = 0; k < edge_count; ++k) {
      std::uniform_int_distribution<std::size_t> d(k, all.size() - 1);
      std::swap(all[k], all[d(rng)]);
      edges.emplace_back(all[k]);
    }
    return Hypergraph(n, m, std::move(edges));
  }
  while (edges.size() < edge_count) {
    std::vector<std::size_t> vs;
    while (vs.size() < m) {
      const auto v = pick(rng);
      if (std::find(vs.begin(), vs.end(), v) == vs.end())
        vs.push_back(v);
    }
    std::sort(vs.begin(), vs.end());
    if (chosen.insert(vs).second)
      edges.emplace_back(std::move(vs));
  }
  return Hypergraph(n, m, std::move(edges));
}

} // namespace hypertensor
