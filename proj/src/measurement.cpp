#include "concbound/measurement.hpp"

#include <cmath>

#include "concbound/copyspace.hpp"
#include "concbound/rng.hpp"

namespace concbound {

namespace {

constexpr double kClampTol = 1e-12;

double projector_probability(const ComplexMatrix& copy,
                             const BipartiteDims& dims, ObservableLabel label) {
  const auto& proj = copy_observable(dims, label);
  const Complex t = trace_of_product(copy, proj.matrix);
  if (std::abs(t.imag()) > 1e-8) {
    throw NumericalIntegrity(
        std::string("parity_distribution: imaginary residue on ") +
        to_string(label));
  }
  double p = t.real();
  if (p < 0.0) {
    if (p < -kClampTol) {
      throw NumericalIntegrity(
          std::string("parity_distribution: probability ") + to_string(label) +
          " = " + std::to_string(p) + " below clamp tolerance");
    }
    p = 0.0;
  }
  return p;
}

}  // namespace

ParityDistribution parity_distribution(const DensityMatrix& rho) {
  validate(rho);
  const ComplexMatrix copy = kron(rho.matrix, rho.matrix);
  ParityDistribution dist;
  dist.p_mm = projector_probability(copy, rho.dims, ObservableLabel::Pmm);
  dist.p_mp = projector_probability(copy, rho.dims, ObservableLabel::Pmp);
  dist.p_pm = projector_probability(copy, rho.dims, ObservableLabel::Ppm);
  dist.p_pp = projector_probability(copy, rho.dims, ObservableLabel::Ppp);
  const double sum = dist.p_mm + dist.p_mp + dist.p_pm + dist.p_pp;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw NumericalIntegrity("parity_distribution: outcomes sum to " +
                             std::to_string(sum));
  }
  dist.p_mm /= sum;
  dist.p_mp /= sum;
  dist.p_pm /= sum;
  dist.p_pp /= sum;
  return dist;
}

ShotEstimate sample_shots(const ParityDistribution& dist, long long shots,
                          std::uint64_t seed) {
  if (shots < 1) {
    throw ContractViolation("sample_shots: shots must be >= 1");
  }
  const double cdf1 = dist.p_mm;
  const double cdf2 = cdf1 + dist.p_mp;
  const double cdf3 = cdf2 + dist.p_pm;

  ShotEstimate est;
  est.shots = shots;
  est.seed = seed;
  Rng rng(seed);
  for (long long s = 0; s < shots; ++s) {
    const double u = rng.uniform();
    int outcome;
    if (u < cdf1) outcome = 0;
    else if (u < cdf2) outcome = 1;
    else if (u < cdf3) outcome = 2;
    else outcome = 3;
    ++est.counts[outcome];
  }

  const double n = static_cast<double>(shots);
  const double f_mm = est.counts[0] / n;
  const double f_mp = est.counts[1] / n;
  const double f_pm = est.counts[2] / n;
  est.v1_hat = 4.0 * (f_mm - f_pm);
  est.v2_hat = 4.0 * (f_mm - f_mp);
  est.std_err_v1 =
      4.0 * std::sqrt(std::max(0.0, f_mm + f_pm - (f_mm - f_pm) * (f_mm - f_pm)) / n);
  est.std_err_v2 =
      4.0 * std::sqrt(std::max(0.0, f_mm + f_mp - (f_mm - f_mp) * (f_mm - f_mp)) / n);
  return est;
}

std::pair<int, long long> protocol_cost(const BipartiteDims& dims) {
  check_dims(dims);
  const long long total = dims.total();
  return {2, total * total - 1};
}

}  // namespace concbound
