#pragma once

#include <string>
#include <variant>

#include "concbound/concurrence.hpp"
#include "concbound/measurement.hpp"
#include "concbound/oracle.hpp"
#include "concbound/states.hpp"

namespace concbound {

using LoadedState = std::variant<PureState, DensityMatrix>;

/// State files: {"dims":[da,db],"kind":"pure"|"density","data":[[re,im],...]}
/// with row-major matrix flattening. Invariant violations are rejected with a
/// diagnostic naming the failed invariant.
LoadedState state_from_json(const std::string& text);
LoadedState load_state_file(const std::string& path);
std::string state_to_json(const PureState& psi);
std::string state_to_json(const DensityMatrix& rho);

DensityMatrix as_density(const LoadedState& state);

/// 17 significant digits; round-trips any finite double exactly.
std::string format_double(double x);

std::string to_json(const BoundReport& report);
std::string to_json(const RoofEstimate& estimate);
/// ShotEstimate with the exact v-values alongside for comparison.
std::string shot_estimate_to_json(const ShotEstimate& est, double v1_exact,
                                  double v2_exact);

}  // namespace concbound
