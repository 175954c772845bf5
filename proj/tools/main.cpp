#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "concbound/harness.hpp"

namespace {

using namespace concbound;

std::pair<int, int> parse_dims_flag(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw CLI::ValidationError("--dims expects a,b");
  }
  return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

std::pair<double, double> parse_band_flag(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw CLI::ValidationError("--band expects lo,hi");
  }
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

int run_scatter(const ScatterConfig& cfg, const std::string& out_path) {
  if (out_path.empty()) {
    return cmd_scatter(cfg, std::cout, std::cerr);
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file: " << out_path << "\n";
    return 1;
  }
  return cmd_scatter(cfg, out, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "concbound: measurable lower bounds on mixed-state concurrence from "
      "parity measurements on a two-fold state copy"};
  app.require_subcommand(1);

  std::string state_path;
  std::string config_path;
  std::string out_path;
  std::string dims_flag;
  std::string band_flag;
  int count = 1000;
  std::uint64_t seed = 0;
  long long shots = 100000;
  bool with_oracle = false;
  int restarts = RoofOptions{}.restarts;
  int ensemble_size = 0;
  int env_dim = 0;

  auto* bound = app.add_subcommand(
      "bound", "Bound report for a state file (exit 0 Entangled, 2 otherwise)");
  bound->add_option("state", state_path, "state JSON file")->required();

  auto* scatter = app.add_subcommand(
      "scatter", "Random-ensemble scatter CSV over a mixedness band");
  scatter->add_option("--config", config_path,
                      "JSON config; flags override its fields");
  scatter->add_option("--dims", dims_flag, "subsystem dims a,b (default 2,2)");
  scatter->add_option("--band", band_flag,
                      "mixedness band lo,hi on sqrt(1-Tr rho^2)");
  scatter->add_option("--count", count, "number of states (default 1000)");
  scatter->add_option("--seed", seed, "ensemble seed (default 0)");
  scatter->add_option("--env-dim", env_dim,
                      "environment dimension (default dim_a*dim_b)");
  scatter->add_flag("--with-oracle", with_oracle,
                    "also run the roof oracle per state");
  scatter->add_option("--restarts", restarts,
                      "oracle restarts (default 20)");
  scatter->add_option("--ensemble-size", ensemble_size,
                      "oracle ensemble size (default min(rank^2, 2*rank))");
  scatter->add_option("--out", out_path, "output path (default stdout)");

  auto* measure = app.add_subcommand(
      "measure", "Finite-shot estimate of the bound for a state file");
  measure->add_option("state", state_path, "state JSON file")->required();
  measure->add_option("--shots", shots, "number of shots (default 100000)");
  measure->add_option("--seed", seed, "sampling seed (default 0)");

  auto* oracle = app.add_subcommand(
      "oracle", "Convex-roof upper estimate plus bound report for a state file");
  oracle->add_option("state", state_path, "state JSON file")->required();
  oracle->add_option("--restarts", restarts, "optimizer restarts (default 20)");
  oracle->add_option("--ensemble-size", ensemble_size,
                     "ensemble size (default min(rank^2, 2*rank))");
  oracle->add_option("--seed", seed, "optimizer seed (default 0)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bound->parsed()) {
      return cmd_bound(state_path, std::cout, std::cerr);
    }
    if (scatter->parsed()) {
      ScatterConfig cfg;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
          std::cerr << "error: cannot open config file: " << config_path << "\n";
          return 1;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        cfg = scatter_config_from_json(buffer.str());
      } else {
        cfg.ensemble.dims = {2, 2};
      }
      if (!dims_flag.empty()) {
        const auto [a, b] = parse_dims_flag(dims_flag);
        cfg.ensemble.dims = {a, b};
      }
      if (!band_flag.empty()) {
        const auto [lo, hi] = parse_band_flag(band_flag);
        cfg.ensemble.band_lo = lo;
        cfg.ensemble.band_hi = hi;
      }
      if (scatter->count("--count") > 0) cfg.ensemble.count = count;
      if (scatter->count("--seed") > 0) cfg.ensemble.seed = seed;
      if (scatter->count("--env-dim") > 0) cfg.ensemble.env_dim = env_dim;
      if (scatter->count("--with-oracle") > 0) cfg.with_oracle = with_oracle;
      if (scatter->count("--restarts") > 0) cfg.roof.restarts = restarts;
      if (scatter->count("--ensemble-size") > 0)
        cfg.roof.ensemble_size = ensemble_size;
      if (config_path.empty() && scatter->count("--count") == 0)
        cfg.ensemble.count = count;
      return run_scatter(cfg, out_path);
    }
    if (measure->parsed()) {
      return cmd_measure(state_path, shots, seed, std::cout, std::cerr);
    }
    if (oracle->parsed()) {
      RoofOptions opts;
      opts.restarts = restarts;
      opts.ensemble_size = ensemble_size;
      return cmd_oracle(state_path, opts, seed, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
