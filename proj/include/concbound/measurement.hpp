#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "concbound/states.hpp"

namespace concbound {

/// Joint parity outcome probabilities on the two-fold copy. First slot is the
/// exchange parity of the two A copies, second of the two B copies
/// (m = antisymmetric/negative, p = symmetric/positive).
struct ParityDistribution {
  double p_mm = 0;
  double p_mp = 0;
  double p_pm = 0;
  double p_pp = 0;
};

/// Finite-statistics estimate of the bound from multinomial parity counts.
struct ShotEstimate {
  long long shots = 0;
  std::array<long long, 4> counts{};  ///< (mm, mp, pm, pp), sums to shots
  double v1_hat = 0;                  ///< 4(counts_mm - counts_pm)/shots
  double v2_hat = 0;                  ///< 4(counts_mm - counts_mp)/shots
  double std_err_v1 = 0;
  double std_err_v2 = 0;
  std::uint64_t seed = 0;
};

/// Exact outcome probabilities p(s1,s2) = Tr((rho⊗rho) P(s1,s2)). Negative
/// values within -1e-12 are clamped to zero and the distribution is
/// renormalized; anything more negative throws NumericalIntegrity.
ParityDistribution parity_distribution(const DensityMatrix& rho);

/// Multinomial sampling of `shots` joint parity measurements by inverse CDF,
/// with delta-method standard errors evaluated at the empirical frequencies.
ShotEstimate sample_shots(const ParityDistribution& dist, long long shots,
                          std::uint64_t seed);

/// (parity observables, tomography observables) = (2, (da*db)^2 - 1).
/// Parity counting assumes each subsystem's parity is one observable; the
/// tomography count generalizes d^4 - 1 to unequal factors.
std::pair<int, long long> protocol_cost(const BipartiteDims& dims);

}  // namespace concbound
