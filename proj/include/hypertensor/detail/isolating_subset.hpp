#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hypertensor::detail {

/// Searches for a nonempty vertex set S with |S| <= max_size such that no
/// multiset in `groups` has exactly one element (counted with multiplicity)
/// inside S. This is the shared core of Def-style "not nicely-connected"
/// witnesses and tensor reducibility index sets.
///
/// Sizes are tried in increasing order and, within one size, sets are visited
/// in lexicographic order of their sorted element lists, so the result is the
/// lexicographically first set of minimum cardinality.
class IsolatingSubsetSearch {
public:
  IsolatingSubsetSearch(std::size_t n, std::span<const std::vector<std::size_t>> groups)
      : n_(n), closing_(n), member_(n, 0) {
    groups_.assign(groups.begin(), groups.end());
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      if (groups_[g].empty())
        continue;
      std::size_t last = 0;
      for (auto v : groups_[g])
        last = v > last ? v : last;
      closing_[last].push_back(g);
    }
  }

  std::optional<std::vector<std::size_t>> find(std::size_t max_size) {
    for (std::size_t k = 1; k <= max_size && k <= n_; ++k) {
      chosen_.clear();
      if (descend(0, k))
        return chosen_;
    }
    return std::nullopt;
  }

private:
  bool closes_cleanly(std::size_t v) const {
    for (auto g : closing_[v]) {
      std::size_t inside = 0;
      for (auto u : groups_[g])
        inside += member_[u];
      if (inside == 1)
        return false;
    }
    return true;
  }

  bool descend(std::size_t v, std::size_t remaining) {
    if (v == n_)
      return remaining == 0;
    if (n_ - v < remaining)
      return false;
    if (remaining > 0) {
      member_[v] = 1;
      chosen_.push_back(v);
      if (closes_cleanly(v) && descend(v + 1, remaining - 1))
        return true;
      chosen_.pop_back();
      member_[v] = 0;
    }
    return closes_cleanly(v) && descend(v + 1, remaining);
  }

  std::size_t n_;
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<std::vector<std::size_t>> closing_;
  std::vector<char> member_;
  std::vector<std::size_t> chosen_;
};

} // namespace hypertensor::detail
