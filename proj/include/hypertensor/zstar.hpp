#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hypertensor/bounds.hpp"
#include "hypertensor/detail/combinatorics.hpp"
#include "hypertensor/eigenpair.hpp"
#include "hypertensor/error.hpp"
#include "hypertensor/hypergraph.hpp"
#include "hypertensor/sshopm.hpp"
#include "hypertensor/tensor.hpp"

namespace hypertensor {

struct ZStarOptions {
  std::size_t starts = 32;
  std::uint64_t seed = 0;
  SshopmConfig sshopm;
};

struct ZStarResult {
  double lambda_star = 0.0;
  EigenPair pair;
  BoundsReport bounds;
  bool bounds_hold = false;
  /// Converged runs sorted by lambda descending, then vector lexicographically.
  std::vector<EigenPair> converged;
  std::size_t failed_starts = 0;
};

namespace detail {

/// Start `index` of a multi-start run; index 0 is the uniform vector, the rest
/// are uniform on [0,1)^n from an engine seeded by (seed, index) alone.
inline Vector nonnegative_start(std::size_t n, std::uint64_t seed, std::size_t index) {
  if (index == 0)
    return Vector(n, 1.0);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector x(n);
  do {
    for (auto& v : x)
      v = u(rng);
  } while (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; }));
  return x;
}

inline constexpr double kTieTolerance = 1e-9;

inline bool pair_order(const EigenPair& a, const EigenPair& b) {
  if (a.value != b.value)
    return a.value > b.value;
  return a.vector < b.vector;
}

} // namespace detail

/// lambda* = max of A_H x^m over the unit sphere, estimated by multi-start
/// SS-HOPM from the uniform vector plus `starts` random nonnegative vectors.
inline ZStarResult z_spectral_radius(const Hypergraph& h, const ZStarOptions& opt = {}) {
  if (h.edge_count() == 0)
    throw PreconditionError("z_spectral_radius needs at least one edge");
  const auto a = adjacency_tensor(h);
  const std::size_t total = opt.starts + 1;
  std::vector<std::optional<SshopmResult>> runs(total);
  detail::parallel_for(total, [&](std::size_t i) {
    SshopmConfig cfg = opt.sshopm;
    cfg.start = detail::nonnegative_start(h.vertex_count(), opt.seed, i);
    runs[i] = sshopm(a, cfg);
  });

  ZStarResult result;
  for (auto& r : runs) {
    if (r->converged && r->pair.residual <= kCertifyTolerance)
      result.converged.push_back(std::move(r->pair));
    else
      ++result.failed_starts;
  }
  if (result.converged.empty())
    throw CertificationFailure("no SS-HOPM start converged to a certified Z-eigenpair");
  std::sort(result.converged.begin(), result.converged.end(), detail::pair_order);
  // Ties within rounding noise go to the lexicographically smallest vector,
  // so the reported maximizer does not depend on last-bit differences.
  result.pair = result.converged.front();
  for (const auto& p : result.converged)
    if (result.converged.front().value - p.value <= detail::kTieTolerance && p.vector < result.pair.vector)
      result.pair = p;
  result.lambda_star = result.pair.value;
  result.bounds = z_bounds(h);
  result.bounds_hold = result.bounds.sandwiches(result.lambda_star);
  return result;
}

} // namespace hypertensor
