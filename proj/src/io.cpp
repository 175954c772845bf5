#include "concbound/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace concbound {

namespace {

using nlohmann::json;

std::vector<Complex> parse_entries(const json& data) {
  std::vector<Complex> out;
  out.reserve(data.size());
  for (const auto& pair : data) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number()) {
      throw ContractViolation(
          "state json: data entries must be [re, im] number pairs");
    }
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

json entries_to_json(const Complex* data, Eigen::Index count) {
  json out = json::array();
  for (Eigen::Index i = 0; i < count; ++i) {
    out.push_back({data[i].real(), data[i].imag()});
  }
  return out;
}

}  // namespace

LoadedState state_from_json(const std::string& text) {
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::exception& e) {
    throw ContractViolation(std::string("state json: parse error: ") + e.what());
  }
  if (!parsed.is_object() || !parsed.contains("dims") ||
      !parsed.contains("kind") || !parsed.contains("data")) {
    throw ContractViolation(
        "state json: object with dims, kind and data fields required");
  }
  const auto& dims_field = parsed["dims"];
  if (!dims_field.is_array() || dims_field.size() != 2 ||
      !dims_field[0].is_number_integer() || !dims_field[1].is_number_integer()) {
    throw ContractViolation("state json: dims must be [dim_a, dim_b]");
  }
  const BipartiteDims dims{dims_field[0].get<int>(), dims_field[1].get<int>()};
  check_dims(dims);
  const std::string kind = parsed["kind"].get<std::string>();
  const std::vector<Complex> entries = parse_entries(parsed["data"]);
  const int n = dims.total();

  if (kind == "pure") {
    if (static_cast<int>(entries.size()) != n) {
      throw ContractViolation("state json: pure state needs " +
                              std::to_string(n) + " amplitudes, got " +
                              std::to_string(entries.size()));
    }
    ComplexVector amps(n);
    for (int i = 0; i < n; ++i) amps(i) = entries[i];
    return make_pure(dims, std::move(amps));
  }
  if (kind == "density") {
    if (static_cast<long long>(entries.size()) !=
        static_cast<long long>(n) * n) {
      throw ContractViolation("state json: density matrix needs " +
                              std::to_string(static_cast<long long>(n) * n) +
                              " entries, got " +
                              std::to_string(entries.size()));
    }
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = entries[i * n + j];
    return make_density(dims, std::move(m));
  }
  throw ContractViolation("state json: kind must be \"pure\" or \"density\"");
}

LoadedState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open state file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return state_from_json(buffer.str());
}

std::string state_to_json(const PureState& psi) {
  json out;
  out["dims"] = {psi.dims.dim_a, psi.dims.dim_b};
  out["kind"] = "pure";
  out["data"] = entries_to_json(psi.amplitudes.data(), psi.amplitudes.size());
  return out.dump();
}

std::string state_to_json(const DensityMatrix& rho) {
  json out;
  out["dims"] = {rho.dims.dim_a, rho.dims.dim_b};
  out["kind"] = "density";
  out["data"] = entries_to_json(rho.matrix.data(), rho.matrix.size());
  return out.dump();
}

DensityMatrix as_density(const LoadedState& state) {
  if (std::holds_alternative<PureState>(state)) {
    return density_from_pure(std::get<PureState>(state));
  }
  return std::get<DensityMatrix>(state);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string to_json(const BoundReport& report) {
  std::ostringstream out;
  out << "{\"v1\":" << format_double(report.v1)
      << ",\"v2\":" << format_double(report.v2)
      << ",\"best\":" << format_double(report.best)
      << ",\"purity_v1\":" << format_double(report.purity_v1)
      << ",\"purity_v2\":" << format_double(report.purity_v2)
      << ",\"discrepancy\":" << format_double(report.discrepancy)
      << ",\"verdict\":\"" << to_string(report.verdict) << "\""
      << ",\"global_purity\":" << format_double(report.global_purity)
      << ",\"marginal_purity_a\":" << format_double(report.marginal_purity_a)
      << ",\"marginal_purity_b\":" << format_double(report.marginal_purity_b)
      << "}";
  return out.str();
}

std::string to_json(const RoofEstimate& estimate) {
  std::ostringstream out;
  out << "{\"value\":" << format_double(estimate.value)
      << ",\"ensemble_size\":" << estimate.ensemble_size
      << ",\"restarts_used\":" << estimate.restarts_used
      << ",\"converged\":" << (estimate.converged ? "true" : "false")
      << ",\"final_gradient_norm\":" << format_double(estimate.final_gradient_norm)
      << "}";
  return out.str();
}

std::string shot_estimate_to_json(const ShotEstimate& est, double v1_exact,
                                  double v2_exact) {
  std::ostringstream out;
  out << "{\"shots\":" << est.shots << ",\"counts\":[" << est.counts[0] << ","
      << est.counts[1] << "," << est.counts[2] << "," << est.counts[3] << "]"
      << ",\"v1_hat\":" << format_double(est.v1_hat)
      << ",\"v2_hat\":" << format_double(est.v2_hat)
      << ",\"std_err_v1\":" << format_double(est.std_err_v1)
      << ",\"std_err_v2\":" << format_double(est.std_err_v2)
      << ",\"seed\":" << est.seed
      << ",\"v1_exact\":" << format_double(v1_exact)
      << ",\"v2_exact\":" << format_double(v2_exact) << "}";
  return out.str();
}

}  // namespace concbound
