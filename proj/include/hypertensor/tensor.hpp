#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypertensor/detail/combinatorics.hpp"
#include "hypertensor/detail/isolating_subset.hpp"
#include "hypertensor/error.hpp"
#include "hypertensor/hypergraph.hpp"

namespace hypertensor {

using Vector = std::vector<double>;

/// Sorted index multiset naming one orbit of a symmetric tensor's entries.
using MultiIndex = std::vector<std::size_t>;

/// Order-m, dimension-n symmetric tensor stored sparsely: one coefficient per
/// sorted index multiset, shared by all of its permutations. Zero coefficients
/// are never stored. Immutable after construction.
class SymmetricTensor {
public:
  using Entries = std::map<MultiIndex, double>;

  SymmetricTensor(std::size_t order, std::size_t dim, Entries entries = {})
      : m_(order), n_(dim) {
    if (m_ < 2)
      throw InvalidInput("tensor order must be at least 2");
    if (n_ < 1)
      throw InvalidInput("tensor dimension must be at least 1");
    for (auto& [key, value] : entries) {
      MultiIndex k = key;
      std::sort(k.begin(), k.end());
      if (k.size() != m_)
        throw InvalidInput("entry index has length " + std::to_string(k.size()) +
                           ", expected " + std::to_string(m_));
      if (k.back() >= n_)
        throw InvalidInput("entry index " + std::to_string(k.back() + 1) + " outside [1, " +
                           std::to_string(n_) + "]");
      if (!std::isfinite(value))
        throw InvalidInput("non-finite tensor entry");
      entries_[k] += value;
    }
    std::erase_if(entries_, [](const auto& kv) { return kv.second == 0.0; });
    compile();
  }

  std::size_t order() const noexcept { return m_; }
  std::size_t dimension() const noexcept { return n_; }
  const Entries& entries() const noexcept { return entries_; }

  /// Coefficient at any index tuple, in any order.
  double entry(std::span<const std::size_t> tuple) const {
    MultiIndex k(tuple.begin(), tuple.end());
    std::sort(k.begin(), k.end());
    const auto it = entries_.find(k);
    return it == entries_.end() ? 0.0 : it->second;
  }

  bool is_nonnegative() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const auto& kv) { return kv.second >= 0.0; });
  }

  bool is_zero() const noexcept { return entries_.empty(); }

  /// out = A x^{m-1}. Each output coordinate sums its terms in a fixed order.
  void apply_into(std::span<const double> x, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto& t : row_terms_) {
      double p = t.coeff;
      for (std::size_t q = 0; q + 1 < m_; ++q)
        p *= x[factors_[t.offset + q]];
      out[t.row] += p;
    }
  }

  /// sum over orbits of a_K * (#orderings of K) * prod_{k in K} x_k.
  double poly_into(std::span<const double> x) const {
    double s = 0.0;
    for (const auto& [key, value] : entries_) {
      double p = value * detail::distinct_orderings<std::size_t>(key);
      for (auto k : key)
        p *= x[k];
      s += p;
    }
    return s;
  }

  /// J(i, j) = d(A x^{m-1})_i / d x_j.
  Eigen::MatrixXd jacobian(std::span<const double> x) const {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_),
                                              static_cast<Eigen::Index>(n_));
    const std::size_t width = m_ - 1;
    for (const auto& t : row_terms_) {
      for (std::size_t p = 0; p < width; ++p) {
        double d = t.coeff;
        for (std::size_t q = 0; q < width; ++q)
          if (q != p)
            d *= x[factors_[t.offset + q]];
        J(static_cast<Eigen::Index>(t.row),
          static_cast<Eigen::Index>(factors_[t.offset + p])) += d;
      }
    }
    return J;
  }

  /// Sum of all n^m entries of the dense tensor.
  double entry_sum() const {
    double s = 0.0;
    for (const auto& [key, value] : entries_)
      s += value * detail::distinct_orderings<std::size_t>(key);
    return s;
  }

private:
  // One term of (A x^{m-1})_row: coeff * prod of the m-1 factor indices.
  struct RowTerm {
    std::size_t row;
    double coeff;
    std::size_t offset;
  };

  void compile() {
    for (const auto& [key, value] : entries_) {
      for (std::size_t i = 0; i < key.size(); ++i) {
        if (i > 0 && key[i] == key[i - 1])
          continue;
        MultiIndex rest = key;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        const double orderings = detail::distinct_orderings<std::size_t>(rest);
        row_terms_.push_back({key[i], value * orderings, factors_.size()});
        factors_.insert(factors_.end(), rest.begin(), rest.end());
      }
    }
  }

  std::size_t m_;
  std::size_t n_;
  Entries entries_;
  std::vector<RowTerm> row_terms_;
  std::vector<std::size_t> factors_;
};

namespace detail {

inline void check_dim(const SymmetricTensor& a, std::span<const double> x) {
  if (x.size() != a.dimension())
    throw DimensionMismatch(a.dimension(), x.size());
}

} // namespace detail

/// Adjacency tensor: 1/(m-1)! on every index tuple realizing an edge. A
/// repeated edge adds its multiplicity.
inline SymmetricTensor adjacency_tensor(const Hypergraph& h) {
  const double w = 1.0 / detail::factorial(h.order() - 1);
  SymmetricTensor::Entries entries;
  for (const auto& e : h.edges())
    entries[MultiIndex(e.vertices().begin(), e.vertices().end())] += w;
  return SymmetricTensor(h.order(), h.vertex_count(), std::move(entries));
}

/// A x^{m-1}.
inline Vector apply(const SymmetricTensor& a, std::span<const double> x) {
  detail::check_dim(a, x);
  Vector out(a.dimension());
  a.apply_into(x, out);
  return out;
}

/// A x^m, the degree-m form of A.
inline double poly_eval(const SymmetricTensor& a, std::span<const double> x) {
  detail::check_dim(a, x);
  return a.poly_into(x);
}

/// Coordinate-wise power x^{[p]}.
inline Vector power_vector(std::span<const double> x, unsigned p) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double v = 1.0;
    for (unsigned k = 0; k < p; ++k)
      v *= x[i];
    out[i] = v;
  }
  return out;
}

/// (E x^{m-1})_i for the all-ones tensor E: (sum_j x_j)^{m-1} in every slot.
inline Vector unit_tensor_apply(std::span<const double> x, std::size_t m) {
  double s = 0.0;
  for (auto v : x)
    s += v;
  return Vector(x.size(), std::pow(s, static_cast<double>(m - 1)));
}

/// n x n matrix with m_ij = sum of a_{i i2..im} over tuples whose trailing
/// indices include j.
struct RepresentationMatrix {
  Eigen::MatrixXd values;

  double operator()(std::size_t i, std::size_t j) const {
    return values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
};

inline RepresentationMatrix representation_matrix(const SymmetricTensor& a) {
  if (!a.is_nonnegative())
    throw PreconditionError("representation matrix needs a nonnegative tensor");
  const auto n = static_cast<Eigen::Index>(a.dimension());
  RepresentationMatrix r{Eigen::MatrixXd::Zero(n, n)};
  for (const auto& [key, value] : a.entries()) {
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i > 0 && key[i] == key[i - 1])
        continue;
      MultiIndex rest = key;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      const double tuples = detail::distinct_orderings<std::size_t>(rest);
      // Tuples (i, rest') containing j: all orderings of rest when j is in rest.
      for (std::size_t q = 0; q < rest.size(); ++q) {
        if (q > 0 && rest[q] == rest[q - 1])
          continue;
        r.values(static_cast<Eigen::Index>(key[i]), static_cast<Eigen::Index>(rest[q])) +=
            value * tuples;
      }
    }
  }
  return r;
}

/// Strong connectivity of the digraph i -> j for m_ij > 0.
inline bool is_weakly_irreducible(const SymmetricTensor& a) {
  const auto m = representation_matrix(a).values;
  const std::size_t n = a.dimension();
  auto reaches_all = [&](bool transpose) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        const double w = transpose ? m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i))
                                   : m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (w > 0.0 && !seen[j]) {
          seen[j] = 1;
          ++count;
          stack.push_back(j);
        }
      }
    }
    return count == n;
  };
  return reaches_all(false) && reaches_all(true);
}

struct ReducibilityResult {
  bool reducible = false;
  std::optional<VertexSet> index_set;
};

/// Searches for a nonempty proper I with a_{i1..im} = 0 whenever i1 is in I
/// and i2..im are not. Exhaustive; n must not exceed max_n.
inline ReducibilityResult is_reducible(const SymmetricTensor& a, std::size_t max_n = 24) {
  const std::size_t n = a.dimension();
  if (n > max_n)
    throw SearchLimitExceeded("reducibility search needs n <= " + std::to_string(max_n) +
                              ", got n = " + std::to_string(n));
  if (n < 2)
    return {};
  std::vector<std::vector<std::size_t>> groups;
  groups.reserve(a.entries().size());
  for (const auto& [key, value] : a.entries())
    groups.push_back(key);
  detail::IsolatingSubsetSearch search(n, groups);
  auto found = search.find(n - 1);
  if (!found)
    return {};
  return {true, std::move(found)};
}

/// A + mu * E with E the all-ones tensor. Dense result; n^m is capped at 1e7.
inline SymmetricTensor perturb(const SymmetricTensor& a, double mu) {
  if (!(mu > 0.0))
    throw PreconditionError("perturbation needs mu > 0");
  const std::size_t n = a.dimension(), m = a.order();
  double dense = 1.0;
  for (std::size_t k = 0; k < m; ++k)
    dense *= static_cast<double>(n);
  if (dense > 1e7)
    throw SearchLimitExceeded("dense perturbation needs n^m <= 1e7");
  SymmetricTensor::Entries entries = a.entries();
  MultiIndex key(m, 0);
  // Enumerate nondecreasing index tuples.
  while (true) {
    entries[key] += mu;
    std::size_t p = m;
    while (p > 0 && key[p - 1] == n - 1)
      --p;
    if (p == 0)
      break;
    const std::size_t next = key[p - 1] + 1;
    for (std::size_t q = p - 1; q < m; ++q)
      key[q] = next;
  }
  return SymmetricTensor(m, n, std::move(entries));
}

} // namespace hypertensor
