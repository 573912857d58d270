#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypertensor/bounds.hpp"
#include "hypertensor/eigenpair.hpp"
#include "hypertensor/error.hpp"
#include "hypertensor/hypergraph.hpp"
#include "hypertensor/nqz.hpp"
#include "hypertensor/oracle.hpp"
#include "hypertensor/positivity.hpp"
#include "hypertensor/symmetry.hpp"
#include "hypertensor/tensor.hpp"
#include "hypertensor/zstar.hpp"

namespace hypertensor {

inline constexpr const char* kReportSchemaVersion = "1.0";

struct AnalyzeOptions {
  bool h_radius = false;
  bool z_star = false;
  bool oracle = false;
  double tol = 1e-10;
  std::size_t starts = 32;
  std::uint64_t seed = 0;
  std::size_t max_iter = 10000;
  std::optional<double> mu;
  /// Raises the exhaustive-search caps (nicely-connected search, oracle size).
  std::optional<std::size_t> limit_n;
  std::size_t oracle_starts = 2000;
  /// SS-HOPM with the adaptive shift instead of ceil(m * sum a).
  bool adaptive_shift = false;
};

struct AnalyzeResult {
  nlohmann::json report;
  /// 0 on success, 2 when any emitted pair fails residual certification.
  int exit_code = 0;
};

namespace detail {

/// Rounds to `digits` significant digits; keeps JSON output short and stable.
inline double round_sig(double v, int digits = 12) {
  if (v == 0.0 || !std::isfinite(v))
    return v == 0.0 ? 0.0 : v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

inline nlohmann::json rounded(const Vector& x) {
  auto out = nlohmann::json::array();
  for (double v : x)
    out.push_back(round_sig(v));
  return out;
}

inline nlohmann::json one_based(const VertexSet& vs) {
  auto out = nlohmann::json::array();
  for (auto v : vs)
    out.push_back(v + 1);
  return out;
}

inline SearchLimits limits_for(const AnalyzeOptions& opt) {
  SearchLimits lim;
  if (opt.limit_n)
    lim.max_exhaustive_n = *opt.limit_n;
  return lim;
}

inline OracleOptions oracle_options_for(const AnalyzeOptions& opt) {
  OracleOptions o;
  o.starts = opt.oracle_starts;
  o.seed = opt.seed;
  if (opt.limit_n)
    o.max_n = std::max(o.max_n, *opt.limit_n);
  return o;
}

inline ZStarOptions zstar_options_for(const AnalyzeOptions& opt) {
  ZStarOptions z;
  z.starts = opt.starts;
  z.seed = opt.seed;
  z.sshopm.tol = opt.tol;
  z.sshopm.max_iter = opt.max_iter;
  if (opt.adaptive_shift)
    z.sshopm.shift_mode = ShiftMode::Adaptive;
  return z;
}

inline NqzOptions nqz_options_for(const AnalyzeOptions& opt) {
  NqzOptions q;
  q.mu = opt.mu;
  q.tol = opt.tol;
  q.max_iter = opt.max_iter;
  q.keep_trace = false;
  return q;
}

inline nlohmann::json structure_json(const StructureReport& s) {
  nlohmann::json j;
  j["n"] = s.n;
  j["m"] = s.m;
  j["edge_count"] = s.edge_count;
  j["simple"] = s.simple;
  j["connected"] = s.connected;
  j["weakly_irreducible"] = nullptr;
  j["nicely_connected"] = s.nicely_connected ? nlohmann::json(*s.nicely_connected) : nullptr;
  j["witness"] = s.witness ? one_based(*s.witness) : nlohmann::json(nullptr);
  j["regular_degree"] = s.regular_degree ? nlohmann::json(*s.regular_degree) : nullptr;
  j["complete"] = s.complete;
  j["m_partite"] = s.m_partite ? nlohmann::json(*s.m_partite) : nullptr;
  if (s.partition) {
    auto parts = nlohmann::json::array();
    for (const auto& p : *s.partition)
      parts.push_back(one_based(p));
    j["partition"] = parts;
  } else {
    j["partition"] = nullptr;
  }
  j["degrees"] = s.degrees;
  j["max_degree"] = s.max_degree;
  return j;
}

inline nlohmann::json bounds_json(const BoundsReport& b) {
  return {{"lower_paper", b.lower_paper},
          {"lower_sharp", b.lower_sharp},
          {"upper_degree", b.upper_degree},
          {"upper_edges", b.upper_edges},
          {"upper", b.upper()}};
}

/// Positivity label of a Z-pair: "positive", "zero_pattern" (nonnegative with
/// zeros), "signed" (coordinates of both signs) or "nonpositive_value"
/// (lambda within zero_tol of zero or below).
inline nlohmann::json positivity_json(const Hypergraph& h, const EigenPair& p) {
  constexpr double zero_tol = 1e-7;
  nlohmann::json j;
  const bool nonneg = std::all_of(p.vector.begin(), p.vector.end(),
                                  [&](double v) { return v >= -zero_tol; });
  if (!(p.value > zero_tol)) {
    j["class"] = "nonpositive_value";
  } else if (!nonneg) {
    j["class"] = "signed";
  } else {
    const auto c = classify_positivity(h, p, zero_tol);
    j["class"] = c.strictly_positive ? "positive" : "zero_pattern";
    j["zero_set"] = one_based(c.zero_set);
    j["witness_consistent"] = c.witness_consistent;
  }
  return j;
}

inline nlohmann::json pair_json(const EigenPair& p) {
  return {{"kind", to_string(p.kind)},
          {"value", p.value},
          {"vector", rounded(p.vector)},
          {"residual", p.residual}};
}

} // namespace detail

/// Structure, optional solver runs, closed forms and spectrum sample for one
/// hypergraph, as a JSON document. Every pair is re-verified before emission.
inline AnalyzeResult analyze(const Hypergraph& h, const AnalyzeOptions& opt = {}) {
  using nlohmann::json;
  AnalyzeResult out;
  json& r = out.report;
  auto warnings = json::array();
  bool cert_failed = false;

  r["schema_version"] = kReportSchemaVersion;
  const auto structure = analyze_structure(h, detail::limits_for(opt));
  r["structure"] = detail::structure_json(structure);
  for (const auto& u : structure.undecided)
    warnings.push_back(u);
  r["h_radius"] = nullptr;
  r["z_star"] = nullptr;
  r["z_spectrum_sample"] = json::array();
  r["symmetry"] = nullptr;
  r["closed_forms"] = nullptr;

  const auto a = adjacency_tensor(h);
  r["structure"]["weakly_irreducible"] = is_weakly_irreducible(a);
  if (h.edge_count() == 0) {
    warnings.push_back("no edges");
    r["warnings"] = warnings;
    return out;
  }

  // Closed forms for regular and complete simple hypergraphs.
  {
    json cf;
    cf["regular_z"] = nullptr;
    cf["regular_h"] = nullptr;
    if (auto p = closed_form_regular_z(h)) {
      cf["regular_z"] = detail::pair_json(*p);
      cf["regular_z"]["complete"] = structure.complete;
    }
    if (h.is_simple() && structure.regular_degree && structure.connected)
      cf["regular_h"] = *structure.regular_degree;
    r["closed_forms"] = cf;
  }

  auto emit = [&](const EigenPair& p, const char* what) {
    const double res = recompute_residual(a, p);
    if (!(res <= kCertifyTolerance) || normalization_error(p, a.order()) > 1e-10) {
      cert_failed = true;
      warnings.push_back(std::string(what) + ": residual " + std::to_string(res) +
                         " fails certification");
    }
  };

  if (opt.h_radius) {
    try {
      const auto q = nqz_h_spectral_radius(a, detail::nqz_options_for(opt));
      emit(q.pair, "h_radius");
      json j;
      j["value"] = q.rho;
      j["pair"] = detail::pair_json(q.pair);
      j["converged"] = q.converged;
      j["certified"] = q.certified;
      j["refine_iterations"] = q.refine_iterations;
      auto runs = json::array();
      for (const auto& run : q.runs)
        runs.push_back({{"mu", run.mu},
                        {"iterations", run.iterations},
                        {"lower", run.lower},
                        {"upper", run.upper},
                        {"converged", run.converged}});
      j["runs"] = runs;
      r["h_radius"] = j;
      if (!q.converged)
        warnings.push_back("h_radius: NQZ did not close its bracket within max_iter");
    } catch (const PreconditionError& e) {
      warnings.push_back(std::string("h_radius: ") + e.what());
    }
  }

  std::vector<EigenPair> sample;
  if (opt.z_star) {
    try {
      const auto z = z_spectral_radius(h, detail::zstar_options_for(opt));
      emit(z.pair, "z_star");
      json j;
      j["value"] = z.lambda_star;
      j["pair"] = detail::pair_json(z.pair);
      j["bounds"] = detail::bounds_json(z.bounds);
      j["bounds_hold"] = z.bounds_hold;
      j["converged_starts"] = z.converged.size();
      j["failed_starts"] = z.failed_starts;
      r["z_star"] = j;
      if (!z.bounds_hold)
        warnings.push_back("z_star: estimate violates the spectral bounds");
      // Distinct converged pairs double as the spectrum sample without --oracle.
      for (const auto& p : z.converged)
        if (sample.empty() || std::abs(sample.back().value - p.value) > 1e-6)
          sample.push_back(p);
    } catch (const CertificationFailure& e) {
      cert_failed = true;
      warnings.push_back(std::string("z_star: ") + e.what());
    }
  }

  if (opt.oracle) {
    try {
      sample = brute_force_z_oracle(a, detail::oracle_options_for(opt));
      if (sample.empty())
        warnings.push_back("oracle: Newton diverged from every start");
      std::vector<double> values;
      for (const auto& p : sample)
        values.push_back(p.value);
      const auto distinct = distinct_eigenvalues(sample);
      const auto sym = spectrum_symmetry_check(distinct);
      r["symmetry"] = {{"symmetric", sym.symmetric},
                       {"sum", detail::round_sig(sym.sum)},
                       {"distinct_values", [&] {
                          auto arr = json::array();
                          for (double v : distinct)
                            arr.push_back(detail::round_sig(v));
                          return arr;
                        }()}};
    } catch (const SearchLimitExceeded& e) {
      warnings.push_back(std::string("oracle: ") + e.what());
    }
  }

  for (const auto& p : sample) {
    emit(p, "z_spectrum_sample");
    json j = detail::pair_json(p);
    j["value"] = detail::round_sig(p.value);
    j["positivity"] = detail::positivity_json(h, p);
    r["z_spectrum_sample"].push_back(j);
  }

  r["warnings"] = warnings;
  out.exit_code = cert_failed ? 2 : 0;
  return out;
}

struct VerifyCheck {
  std::string name;
  enum class Status { Pass, Fail, Skip } status = Status::Pass;
  std::string detail;
};

struct VerifyResult {
  std::vector<VerifyCheck> checks;
  /// 0 when nothing failed, 1 otherwise.
  int exit_code = 0;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline Vector json_vector(const nlohmann::json& j) {
  Vector x;
  for (const auto& v : j)
    x.push_back(v.get<double>());
  return x;
}

} // namespace detail

/// Runs the invariant battery on one hypergraph. With `report`, additionally
/// re-verifies every pair and bound that report claims.
inline VerifyResult verify(const Hypergraph& h, const AnalyzeOptions& opt = {},
                           const nlohmann::json* report = nullptr) {
  using S = VerifyCheck::Status;
  VerifyResult out;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    out.checks.push_back({std::move(name), ok ? S::Pass : S::Fail, std::move(detail)});
  };
  auto skip = [&](std::string name, std::string why) {
    out.checks.push_back({std::move(name), S::Skip, std::move(why)});
  };

  const std::size_t n = h.vertex_count(), m = h.order();
  const auto a = adjacency_tensor(h);
  const auto structure = analyze_structure(h, detail::limits_for(opt));

  std::size_t deg_sum = 0;
  for (auto d : structure.degrees)
    deg_sum += d;
  if (h.is_simple())
    add("degree_sum", deg_sum == m * h.edge_count(),
        std::to_string(deg_sum) + " vs m|E| = " + std::to_string(m * h.edge_count()));
  else
    skip("degree_sum", "multigraph");

  add("connected_iff_weakly_irreducible", structure.connected == is_weakly_irreducible(a),
      std::string("connected = ") + (structure.connected ? "true" : "false"));

  if (structure.witness)
    add("witness_valid", is_witness(h, *structure.witness));
  else if (structure.nicely_connected)
    add("nicely_connected_implies_connected", structure.connected);
  else
    skip("witness_valid", "nicely-connected search undecided");

  if (structure.partition)
    add("partition_valid", is_m_partition(h, *structure.partition));
  else
    skip("partition_valid", "no m-partition");

  if (h.edge_count() == 0) {
    skip("solvers", "no edges");
    out.exit_code = 0;
    return out;
  }

  // H-spectral radius by NQZ.
  const auto q = nqz_h_spectral_radius(a, [&] {
    auto o = detail::nqz_options_for(opt);
    o.keep_trace = true;
    return o;
  }());
  add("h_pair_certified", is_certified(a, q.pair), "residual " + detail::fmt(q.pair.residual));
  bool monotone = true;
  for (const auto& run : q.runs)
    for (std::size_t k = 0; k < run.trace.size(); ++k) {
      const auto& s = run.trace[k];
      if (s.lower > s.upper + 1e-12)
        monotone = false;
      if (k > 0 && (s.lower < run.trace[k - 1].lower - 1e-12 ||
                    s.upper > run.trace[k - 1].upper + 1e-12))
        monotone = false;
    }
  add("nqz_brackets_monotone", monotone);
  if (h.is_simple() && structure.regular_degree && structure.connected)
    add("h_radius_equals_degree", std::abs(q.rho - static_cast<double>(*structure.regular_degree)) <= 1e-4,
        "rho = " + detail::fmt(q.rho) + ", r = " + std::to_string(*structure.regular_degree));
  else
    skip("h_radius_equals_degree", "not simple, connected and regular");

  // Largest Z-eigenvalue and its bounds.
  std::optional<ZStarResult> z;
  try {
    z = z_spectral_radius(h, detail::zstar_options_for(opt));
  } catch (const CertificationFailure& e) {
    add("z_star_certified", false, e.what());
  }
  if (z) {
    add("z_star_certified", is_certified(a, z->pair),
        "residual " + detail::fmt(z->pair.residual));
    add("bounds_sandwich", z->bounds_hold,
        detail::fmt(z->bounds.lower_paper) + " <= " + detail::fmt(z->bounds.lower_sharp) +
            " <= " + detail::fmt(z->lambda_star) + " <= " + detail::fmt(z->bounds.upper()));
    if (auto cf = closed_form_regular_z(h)) {
      const bool ok = is_certified(a, *cf, 1e-10) &&
                      (structure.complete ? std::abs(z->lambda_star - cf->value) <= 1e-6
                                          : z->lambda_star >= cf->value - 1e-9);
      add("regular_closed_form", ok,
          "closed form " + detail::fmt(cf->value) + ", lambda* " + detail::fmt(z->lambda_star));
    } else {
      skip("regular_closed_form", "not simple and regular");
    }
  }

  // Full spectrum at desk scale.
  const auto oopt = detail::oracle_options_for(opt);
  if (n <= oopt.max_n) {
    const auto pairs = brute_force_z_oracle(a, oopt);
    add("oracle_pairs_certified",
        !pairs.empty() && std::all_of(pairs.begin(), pairs.end(),
                                      [&](const EigenPair& p) { return is_certified(a, p); }),
        std::to_string(pairs.size()) + " pairs");
    if (z && !pairs.empty())
      add("oracle_agrees_with_z_star", std::abs(pairs.front().value - z->lambda_star) <= 1e-6,
          "oracle " + detail::fmt(pairs.front().value) + ", SS-HOPM " +
              detail::fmt(z->lambda_star));
    const std::optional<Partition> partition =
        m % 2 == 0 ? structure.partition : std::optional<Partition>{};
    if (m % 2 == 1 || partition) {
      const auto distinct = distinct_eigenvalues(pairs);
      const auto sym = spectrum_symmetry_check(distinct);
      add("spectrum_symmetric", sym.symmetric && std::abs(sym.sum) <= 1e-6,
          "sum " + detail::fmt(sym.sum));
      bool mirrored = true;
      for (const auto& p : pairs) {
        try {
          negate_eigenpair(a, p, partition, 1e-10);
        } catch (const Error&) {
          mirrored = false;
        }
      }
      add("negated_pairs_certified", mirrored);
    } else {
      skip("spectrum_symmetric", "even order without m-partition");
    }
    bool positivity = true;
    for (const auto& p : pairs) {
      if (!(p.value > 1e-7) ||
          std::any_of(p.vector.begin(), p.vector.end(), [](double v) { return v < -1e-7; }))
        continue;
      const auto c = classify_positivity(h, p);
      if (!c.witness_consistent)
        positivity = false;
      if (structure.nicely_connected.value_or(false) &&
          *std::min_element(p.vector.begin(), p.vector.end()) <= 1e-6)
        positivity = false;
    }
    add("nonnegative_pairs_respect_nicely_connected", positivity);
  } else {
    skip("oracle", "n exceeds oracle limit");
  }

  // Claims of a previously emitted report.
  if (report) {
    auto claim = [&](const std::string& name, const nlohmann::json& pj) {
      try {
        EigenPair p{pj.at("kind").get<std::string>() == "H" ? EigenKind::H : EigenKind::Z,
                    pj.at("value").get<double>(), detail::json_vector(pj.at("vector")), 0.0};
        add(name, is_certified(a, p), "residual " + detail::fmt(recompute_residual(a, p)));
      } catch (const std::exception& e) {
        add(name, false, e.what());
      }
    };
    const auto& rep = *report;
    if (rep.contains("structure") && rep["structure"].is_object()) {
      const auto expect = detail::structure_json(structure);
      bool same = true;
      for (const char* key : {"n", "m", "edge_count", "connected", "nicely_connected",
                              "witness", "regular_degree", "complete", "degrees"})
        if (!rep["structure"].contains(key) || rep["structure"][key] != expect[key])
          same = false;
      add("report_structure", same);
    }
    if (rep.contains("h_radius") && rep["h_radius"].is_object()) {
      claim("report_h_pair", rep["h_radius"]["pair"]);
      const double v = rep["h_radius"].value("value", 0.0);
      add("report_h_value", std::abs(v - q.rho) <= 1e-6, detail::fmt(v));
    }
    if (rep.contains("z_star") && rep["z_star"].is_object()) {
      claim("report_z_star_pair", rep["z_star"]["pair"]);
      const auto& b = rep["z_star"]["bounds"];
      const auto expect = z_bounds(h);
      const double v = rep["z_star"].value("value", 0.0);
      const bool bounds_ok =
          b.is_object() && std::abs(b.value("lower_paper", -1.0) - expect.lower_paper) <= 1e-9 &&
          std::abs(b.value("lower_sharp", -1.0) - expect.lower_sharp) <= 1e-9 &&
          std::abs(b.value("upper_degree", -1.0) - expect.upper_degree) <= 1e-9 &&
          std::abs(b.value("upper_edges", -1.0) - expect.upper_edges) <= 1e-9 &&
          expect.sandwiches(v);
      add("report_z_star_bounds", bounds_ok, "lambda* " + detail::fmt(v));
    }
    if (rep.contains("z_spectrum_sample") && rep["z_spectrum_sample"].is_array()) {
      std::size_t k = 0;
      for (const auto& pj : rep["z_spectrum_sample"])
        claim("report_sample_" + std::to_string(++k), pj);
    }
  }

  out.exit_code = std::any_of(out.checks.begin(), out.checks.end(),
                              [](const VerifyCheck& c) { return c.status == S::Fail; })
                      ? 1
                      : 0;
  return out;
}

/// PASS/FAIL/SKIP table, one check per line.
inline std::string render_checks(const VerifyResult& v) {
  std::size_t width = 0;
  for (const auto& c : v.checks)
    width = std::max(width, c.name.size());
  std::ostringstream os;
  for (const auto& c : v.checks) {
    const char* tag = c.status == VerifyCheck::Status::Pass   ? "PASS"
                      : c.status == VerifyCheck::Status::Fail ? "FAIL"
                                                              : "SKIP";
    os << tag << "  " << c.name << std::string(width - c.name.size(), ' ');
    if (!c.detail.empty())
      os << "  " << c.detail;
    os << '\n';
  }
  return os.str();
}

} // namespace hypertensor
