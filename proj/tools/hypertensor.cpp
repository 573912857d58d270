// hypertensor: structure and eigenvalue analysis of uniform hypergraphs.
//
//   hypertensor analyze FILE [--h-radius] [--z-star] [--oracle] ...
//   hypertensor gen --n N --m M --edges K [--multi] [--seed S]
//   hypertensor verify FILE [--report REPORT.json] ...
//
// Exit codes: 0 ok, 1 verification failure, 2 certification failure,
// 3 input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypertensor/hypertensor.hpp"

namespace {

constexpr int kInputError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw hypertensor::InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct SolverFlags {
  hypertensor::AnalyzeOptions opt;
  double mu = 0.0;
  std::size_t limit_n = 0;
  bool allow_slow = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tol", opt.tol, "Iteration tolerance")->capture_default_str();
    cmd->add_option("--starts", opt.starts, "Random SS-HOPM starts")->capture_default_str();
    cmd->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
    cmd->add_option("--max-iter", opt.max_iter, "Iteration cap per run")->capture_default_str();
    cmd->add_option("--mu", mu, "Single NQZ perturbation instead of the default schedule");
    cmd->add_option("--oracle-starts", opt.oracle_starts, "Newton starts for the oracle")
        ->capture_default_str();
    cmd->add_flag("--adaptive-shift", opt.adaptive_shift,
                  "SS-HOPM with a per-step convexifying shift (faster, same fixed points)");
    cmd->add_option("--limit-n", limit_n,
                    "Raise the exhaustive-search size caps (needs --allow-slow)");
    cmd->add_flag("--allow-slow", allow_slow,
                  "Acknowledge that raised caps can take exponential time");
  }

  void finish(CLI::App* cmd) {
    if (cmd->count("--mu"))
      opt.mu = mu;
    if (cmd->count("--limit-n")) {
      if (!allow_slow)
        throw hypertensor::InvalidInput("--limit-n needs --allow-slow");
      opt.limit_n = limit_n;
    }
  }
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure and eigenvalue analysis of uniform hypergraphs"};
  app.require_subcommand(1);

  std::string analyze_path;
  SolverFlags analyze_flags;
  auto* analyze = app.add_subcommand("analyze", "Emit a JSON spectral report");
  analyze->add_option("file", analyze_path, "Hypergraph file")->required();
  analyze->add_flag("--h-radius", analyze_flags.opt.h_radius, "H-spectral radius by NQZ");
  analyze->add_flag("--z-star", analyze_flags.opt.z_star,
                    "Largest Z-eigenvalue by multi-start SS-HOPM, with bounds");
  analyze->add_flag("--oracle", analyze_flags.opt.oracle,
                    "Full real Z-spectrum by multi-start Newton (small n)");
  analyze_flags.attach(analyze);

  std::size_t gen_n = 0, gen_m = 0, gen_edges = 0;
  std::uint64_t gen_seed = 0;
  bool gen_multi = false;
  auto* gen = app.add_subcommand("gen", "Generate a random uniform hypergraph");
  gen->add_option("--n", gen_n, "Vertex count")->required();
  gen->add_option("--m", gen_m, "Edge size")->required();
  gen->add_option("--edges", gen_edges, "Edge count")->required();
  gen->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
  gen->add_flag("--multi", gen_multi, "Allow hyperloops and repeated edges");

  std::string verify_path, verify_report;
  SolverFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "Run the invariant battery on a hypergraph");
  verify->add_option("file", verify_path, "Hypergraph file")->required();
  verify->add_option("--report", verify_report, "Also re-verify the claims of a JSON report");
  verify_flags.attach(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*analyze) {
      analyze_flags.finish(analyze);
      const auto h = hypertensor::parse_hgr(read_file(analyze_path));
      const auto result = hypertensor::analyze(h, analyze_flags.opt);
      std::cout << result.report.dump(2) << '\n';
      for (const auto& w : result.report["warnings"])
        std::cerr << "warning: " << w.get<std::string>() << '\n';
      return result.exit_code;
    }
    if (*gen) {
      const auto h = hypertensor::generate_hypergraph(gen_n, gen_m, gen_edges, !gen_multi, gen_seed);
      std::cout << "# generated: n=" << gen_n << " m=" << gen_m << " edges=" << gen_edges
                << (gen_multi ? " multi" : " simple") << " seed=" << gen_seed << '\n'
                << hypertensor::render_hgr(h);
      return 0;
    }
    if (*verify) {
      verify_flags.finish(verify);
      const auto h = hypertensor::parse_hgr(read_file(verify_path));
      std::optional<nlohmann::json> report;
      if (!verify_report.empty()) {
        try {
          report = nlohmann::json::parse(read_file(verify_report));
        } catch (const nlohmann::json::exception& e) {
          throw hypertensor::InvalidInput(std::string("report is not valid JSON: ") + e.what());
        }
      }
      const auto result =
          hypertensor::verify(h, verify_flags.opt, report ? &*report : nullptr);
      std::cout << hypertensor::render_checks(result);
      return result.exit_code;
    }
  } catch (const hypertensor::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const hypertensor::CertificationFailure& e) {
    std::cerr << "certification failure: " << e.what() << '\n';
    return 2;
  } catch (const hypertensor::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return 0;
}
