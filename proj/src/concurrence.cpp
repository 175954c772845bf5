#include "concbound/concurrence.hpp"

#include <algorithm>
#include <cmath>

namespace concbound {

namespace {

constexpr double kNoiseFloor = 1e-14;       // radicand snap, see header
constexpr double kImagSoftTol = 1e-10;
constexpr double kImagHardTol = 1e-8;
constexpr double kCrossCheckTol = 1e-9;
constexpr double kDiscrepancyTol = 1e-8;

double real_checked(Complex z, const char* context) {
  if (std::abs(z.imag()) > kImagHardTol) {
    throw NumericalIntegrity(std::string(context) + ": imaginary residue " +
                             std::to_string(z.imag()) + " exceeds 1e-8");
  }
  return z.real();
}

// Tr((M M†)^2) for the dim_a x dim_b reshape M of a state vector; works on
// the smaller Gram matrix.
double marginal_purity_of_vector(const ComplexVector& amps,
                                 const BipartiteDims& dims) {
  Eigen::Map<const ComplexMatrix> m(amps.data(), dims.dim_a, dims.dim_b);
  if (dims.dim_a <= dims.dim_b) {
    return (m * m.adjoint()).squaredNorm();
  }
  return (m.adjoint() * m).squaredNorm();
}

}  // namespace

const char* to_string(Verdict v) {
  return v == Verdict::Entangled ? "Entangled" : "Inconclusive";
}

double concurrence_sq_unit(const ComplexVector& unit_amplitudes,
                           const BipartiteDims& dims) {
  double radicand = 1.0 - marginal_purity_of_vector(unit_amplitudes, dims);
  if (radicand < kNoiseFloor) radicand = 0.0;
  return 2.0 * radicand;
}

double pure_concurrence(const PureState& psi) {
  validate(psi);
  const double c_sq = concurrence_sq_unit(psi.amplitudes, psi.dims);

  // Cross-check against the defining copy-operator expectation value.
  const auto& a = copy_observable(psi.dims, ObservableLabel::A);
  ComplexVector copy = kron(ComplexMatrix(psi.amplitudes),
                            ComplexMatrix(psi.amplitudes));
  const double c_sq_op =
      real_checked(copy.dot(a.matrix * copy), "pure_concurrence");
  if (std::abs(c_sq_op - c_sq) > kCrossCheckTol) {
    throw NumericalIntegrity(
        "pure_concurrence: operator and purity forms disagree by " +
        std::to_string(std::abs(c_sq_op - c_sq)));
  }
  return std::sqrt(std::max(0.0, c_sq));
}

std::pair<double, double> bound_operator_form(const DensityMatrix& rho) {
  validate(rho);
  const ComplexMatrix copy = kron(rho.matrix, rho.matrix);
  const auto& v1 = copy_observable(rho.dims, ObservableLabel::V1);
  const auto& v2 = copy_observable(rho.dims, ObservableLabel::V2);
  const Complex t1 = trace_of_product(copy, v1.matrix);
  const Complex t2 = trace_of_product(copy, v2.matrix);
  return {real_checked(t1, "bound_operator_form v1"),
          real_checked(t2, "bound_operator_form v2")};
}

std::pair<double, double> bound_purity_form(const DensityMatrix& rho) {
  validate(rho);
  const double global = purity(rho);
  const double pa =
      partial_trace(rho.matrix, rho.dims, Subsystem::A).squaredNorm();
  const double pb =
      partial_trace(rho.matrix, rho.dims, Subsystem::B).squaredNorm();
  return {2.0 * (global - pa), 2.0 * (global - pb)};
}

BoundReport witness(const DensityMatrix& rho) {
  BoundReport report;
  const auto [ov1, ov2] = bound_operator_form(rho);
  const auto [pv1, pv2] = bound_purity_form(rho);
  report.v1 = ov1;
  report.v2 = ov2;
  report.best = std::max(ov1, ov2);
  report.purity_v1 = pv1;
  report.purity_v2 = pv2;
  report.discrepancy = std::max(std::abs(ov1 - pv1), std::abs(ov2 - pv2));
  if (report.discrepancy > kDiscrepancyTol) {
    throw NumericalIntegrity(
        "witness: operator and purity forms disagree by " +
        std::to_string(report.discrepancy));
  }
  report.verdict = report.best > kWitnessThreshold ? Verdict::Entangled
                                                   : Verdict::Inconclusive;
  report.global_purity = purity(rho);
  report.marginal_purity_a =
      partial_trace(rho.matrix, rho.dims, Subsystem::A).squaredNorm();
  report.marginal_purity_b =
      partial_trace(rho.matrix, rho.dims, Subsystem::B).squaredNorm();
  return report;
}

PairInequalityReport verify_pair_inequality(const PureState& psi,
                                            const PureState& phi) {
  validate(psi);
  validate(phi);
  if (!(psi.dims == phi.dims)) {
    throw ContractViolation("verify_pair_inequality: states have different dims");
  }
  const int da = psi.dims.dim_a, db = psi.dims.dim_b;

  // One full SVD of phi supplies both the Schmidt coefficients and the local
  // bases (extended past the Schmidt rank) in which psi is re-expressed.
  const int full = std::min(da, db);
  Eigen::Map<const ComplexMatrix> psi_mat(psi.amplitudes.data(), da, db);
  Eigen::Map<const ComplexMatrix> phi_mat(phi.amplitudes.data(), da, db);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      phi_mat, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXcd coeffs =
      svd.matrixU().adjoint() * psi_mat * svd.matrixV();

  RealVector lambda = RealVector::Zero(full);
  for (int k = 0; k < full; ++k) {
    lambda(k) = svd.singularValues()(k) * svd.singularValues()(k);
  }

  double lhs = 0.0;
  for (int i = 0; i < full; ++i) {
    for (int j = 0; j < full; ++j) {
      if (i == j) continue;
      lhs += (std::conj(coeffs(i, i)) * coeffs(j, j)).real() *
             std::sqrt(lambda(i) * lambda(j));
    }
  }
  for (int i = 0; i < full; ++i) {
    for (int j = 0; j < db; ++j) {
      if (i == j) continue;
      lhs -= std::norm(coeffs(i, j)) * lambda(i);
    }
  }

  double lambda_pairs = 0.0;
  for (int i = 0; i < full; ++i)
    for (int j = 0; j < full; ++j)
      if (i != j) lambda_pairs += lambda(i) * lambda(j);

  double minor_sq = 0.0;
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) {
      if (i == j) continue;
      for (int p = 0; p < db; ++p)
        for (int q = 0; q < db; ++q) {
          if (p == q) continue;
          minor_sq +=
              std::norm(coeffs(i, p) * coeffs(j, q) - coeffs(i, q) * coeffs(j, p));
        }
    }

  PairInequalityReport report;
  report.lhs = lhs;
  report.rhs = std::sqrt(std::max(0.0, lambda_pairs)) *
               std::sqrt(std::max(0.0, minor_sq));
  report.margin = report.rhs - report.lhs;
  return report;
}

DecompositionInequalityReport verify_decomposition_inequality(
    const Ensemble& decomposition) {
  if (decomposition.vectors.empty()) {
    throw ContractViolation("verify_decomposition_inequality: empty ensemble");
  }
  check_dims(decomposition.dims);
  const int n = decomposition.dims.total();
  ComplexMatrix mix = ComplexMatrix::Zero(n, n);
  double avg = 0.0;
  for (const auto& phi : decomposition.vectors) {
    if (phi.size() != n) {
      throw ContractViolation(
          "verify_decomposition_inequality: member length mismatch");
    }
    const double w = phi.squaredNorm();
    if (w > 0.0) {
      avg += w * std::sqrt(concurrence_sq_unit(phi / phi.norm(),
                                               decomposition.dims));
    }
    mix += phi * phi.adjoint();
  }
  DensityMatrix rho;
  try {
    rho = make_density(decomposition.dims, std::move(mix));
  } catch (const ContractViolation& e) {
    throw ContractViolation(
        std::string("verify_decomposition_inequality: mixture is not a valid "
                    "density matrix: ") +
        e.what());
  }
  const auto [v1, v2] = bound_operator_form(rho);

  DecompositionInequalityReport report;
  report.v1 = v1;
  report.v2 = v2;
  report.avg_concurrence = avg;
  report.margin_v1 = avg * avg - v1;
  report.margin_v2 = avg * avg - v2;
  return report;
}

}  // namespace concbound
