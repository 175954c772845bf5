#include "concbound/harness.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace concbound {

namespace {

using nlohmann::json;

constexpr char kCsvHeader[] =
    "# state_index,mixedness,mean_bound,max_bound,oracle_sq,dims,seed";

// Substream id for the per-row oracle seed, derived from the row's draw seed.
constexpr std::uint64_t kOracleStream = 1;

double parse_csv_double(const std::string& field, const char* name) {
  try {
    std::size_t used = 0;
    const double value = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return value;
  } catch (const std::exception&) {
    throw ContractViolation(std::string("scatter csv: bad ") + name +
                            " field: " + field);
  }
}

}  // namespace

ScatterConfig scatter_config_from_json(const std::string& text) {
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::exception& e) {
    throw ContractViolation(std::string("scatter config: parse error: ") +
                            e.what());
  }
  if (!parsed.is_object() || !parsed.contains("dims") ||
      !parsed.contains("band") || !parsed.contains("count")) {
    throw ContractViolation(
        "scatter config: dims, band and count fields required");
  }
  ScatterConfig cfg;
  cfg.ensemble.dims = {parsed["dims"][0].get<int>(),
                       parsed["dims"][1].get<int>()};
  cfg.ensemble.band_lo = parsed["band"][0].get<double>();
  cfg.ensemble.band_hi = parsed["band"][1].get<double>();
  cfg.ensemble.count = parsed["count"].get<int>();
  if (parsed.contains("seed")) cfg.ensemble.seed = parsed["seed"].get<std::uint64_t>();
  if (parsed.contains("env_dim")) cfg.ensemble.env_dim = parsed["env_dim"].get<int>();
  if (parsed.contains("time_grid")) {
    for (const auto& t : parsed["time_grid"])
      cfg.ensemble.time_grid.push_back(t.get<double>());
  }
  if (parsed.contains("with_oracle")) cfg.with_oracle = parsed["with_oracle"].get<bool>();
  if (parsed.contains("restarts")) cfg.roof.restarts = parsed["restarts"].get<int>();
  if (parsed.contains("ensemble_size"))
    cfg.roof.ensemble_size = parsed["ensemble_size"].get<int>();
  return cfg;
}

std::vector<ScatterRow> generate_scatter(const ScatterConfig& cfg) {
  const std::vector<TracedDensity> states = random_mixed_ensemble_traced(cfg.ensemble);
  std::vector<ScatterRow> rows;
  rows.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const DensityMatrix& rho = states[i].state;
    const BoundReport report = witness(rho);
    ScatterRow row;
    row.state_index = static_cast<long long>(i);
    row.mixedness = mixedness(rho);
    row.mean_bound = (report.v1 + report.v2) / 2.0;
    row.max_bound = report.best;
    row.dims = rho.dims;
    row.seed = states[i].draw_seed;
    if (cfg.with_oracle) {
      const RoofEstimate roof = roof_concurrence(
          rho, cfg.roof, Rng::derive(states[i].draw_seed, kOracleStream));
      row.oracle_sq = roof.value * roof.value;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_scatter_csv(std::ostream& out, const std::vector<ScatterRow>& rows) {
  out << kCsvHeader << "\n";
  long long positive = 0;
  for (const auto& row : rows) {
    out << row.state_index << "," << format_double(row.mixedness) << ","
        << format_double(row.mean_bound) << "," << format_double(row.max_bound)
        << ",";
    if (row.oracle_sq) out << format_double(*row.oracle_sq);
    out << "," << row.dims.dim_a << "x" << row.dims.dim_b << "," << row.seed
        << "\n";
    if (row.mean_bound > 0.0) ++positive;
  }
  if (!rows.empty()) {
    const double fraction =
        static_cast<double>(positive) / static_cast<double>(rows.size());
    out << "# positive_mean_bound_fraction=" << format_double(fraction) << "\n";
  }
}

std::vector<ScatterRow> parse_scatter_csv(std::istream& in) {
  std::vector<ScatterRow> rows;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (!saw_header) {
        if (line != kCsvHeader) {
          throw ContractViolation("scatter csv: unexpected header: " + line);
        }
        saw_header = true;
      }
      continue;  // footer comments carry derived summaries only
    }
    if (!saw_header) {
      throw ContractViolation("scatter csv: data before header");
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = line.find(',', start);
      if (pos == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
    if (fields.size() != 7) {
      throw ContractViolation("scatter csv: expected 7 fields, got " +
                              std::to_string(fields.size()));
    }
    ScatterRow row;
    row.state_index = std::stoll(fields[0]);
    row.mixedness = parse_csv_double(fields[1], "mixedness");
    row.mean_bound = parse_csv_double(fields[2], "mean_bound");
    row.max_bound = parse_csv_double(fields[3], "max_bound");
    if (!fields[4].empty()) {
      row.oracle_sq = parse_csv_double(fields[4], "oracle_sq");
    }
    const std::size_t x = fields[5].find('x');
    if (x == std::string::npos) {
      throw ContractViolation("scatter csv: bad dims field: " + fields[5]);
    }
    row.dims = {std::stoi(fields[5].substr(0, x)),
                std::stoi(fields[5].substr(x + 1))};
    row.seed = std::stoull(fields[6]);
    rows.push_back(std::move(row));
  }
  if (!saw_header && !rows.empty()) {
    throw ContractViolation("scatter csv: missing header");
  }
  return rows;
}

int cmd_bound(const std::string& state_path, std::ostream& out,
              std::ostream& err) {
  try {
    const DensityMatrix rho = as_density(load_state_file(state_path));
    const BoundReport report = witness(rho);
    out << to_json(report) << "\n";
    return report.verdict == Verdict::Entangled ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_scatter(const ScatterConfig& cfg, std::ostream& out,
                std::ostream& err) {
  try {
    const std::vector<ScatterRow> rows = generate_scatter(cfg);
    write_scatter_csv(out, rows);
    return 0;
  } catch (const YieldError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_measure(const std::string& state_path, long long shots,
                std::uint64_t seed, std::ostream& out, std::ostream& err) {
  try {
    const DensityMatrix rho = as_density(load_state_file(state_path));
    const ParityDistribution dist = parity_distribution(rho);
    const ShotEstimate est = sample_shots(dist, shots, seed);
    const auto [v1, v2] = bound_operator_form(rho);
    out << shot_estimate_to_json(est, v1, v2) << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_oracle(const std::string& state_path, const RoofOptions& opts,
               std::uint64_t seed, std::ostream& out, std::ostream& err) {
  try {
    const DensityMatrix rho = as_density(load_state_file(state_path));
    const RoofEstimate estimate = roof_concurrence(rho, opts, seed);
    const BoundReport report = witness(rho);
    out << "{\"roof\":" << to_json(estimate) << ",\"bound\":" << to_json(report)
        << "}\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace concbound
