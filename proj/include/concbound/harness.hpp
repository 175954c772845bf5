#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "concbound/io.hpp"

namespace concbound {

/// One scatter sample: mixedness against the measurable bound, optionally
/// with the roof-oracle estimate for dominance comparison.
struct ScatterRow {
  long long state_index = 0;
  double mixedness = 0;
  double mean_bound = 0;  ///< (v1 + v2)/2
  double max_bound = 0;   ///< max(v1, v2)
  std::optional<double> oracle_sq;  ///< roof estimate squared, when enabled
  BipartiteDims dims;
  std::uint64_t seed = 0;  ///< substream seed of the draw that produced the state
};

struct ScatterConfig {
  RandomEnsembleConfig ensemble;
  bool with_oracle = false;
  RoofOptions roof;
};

/// Parses {"dims":[a,b],"band":[lo,hi],"count":N,"seed":S,...} with optional
/// env_dim, time_grid, with_oracle, restarts, ensemble_size.
ScatterConfig scatter_config_from_json(const std::string& text);

std::vector<ScatterRow> generate_scatter(const ScatterConfig& cfg);

/// CSV with a single commented header line and, when rows exist, a commented
/// summary footer with the fraction of rows with positive mean_bound. Floats
/// carry 17 significant digits; writing what parse_scatter_csv read is
/// byte-identical.
void write_scatter_csv(std::ostream& out, const std::vector<ScatterRow>& rows);
std::vector<ScatterRow> parse_scatter_csv(std::istream& in);

// Command entry points used by the CLI. Exit codes: 0 success (Entangled for
// bound), 2 inconclusive (bound only), 1 any error.
int cmd_bound(const std::string& state_path, std::ostream& out,
              std::ostream& err);
int cmd_scatter(const ScatterConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_measure(const std::string& state_path, long long shots,
                std::uint64_t seed, std::ostream& out, std::ostream& err);
int cmd_oracle(const std::string& state_path, const RoofOptions& opts,
               std::uint64_t seed, std::ostream& out, std::ostream& err);

}  // namespace concbound
