#pragma once

#include <utility>

#include "concbound/copyspace.hpp"
#include "concbound/states.hpp"

namespace concbound {

enum class Verdict { Entangled, Inconclusive };
const char* to_string(Verdict v);

/// Witness threshold: above the 1e-8 numerical discrepancy floor, far below
/// physically meaningful bound values.
inline constexpr double kWitnessThreshold = 1e-7;

/// Measurable lower bound on squared concurrence, in both algebraic forms.
struct BoundReport {
  double v1 = 0;  ///< Tr(rho⊗rho V1)
  double v2 = 0;  ///< Tr(rho⊗rho V2)
  double best = 0;  ///< max(v1, v2)
  double purity_v1 = 0;  ///< 2(Tr rho^2 - Tr rho_A^2)
  double purity_v2 = 0;  ///< 2(Tr rho^2 - Tr rho_B^2)
  double discrepancy = 0;  ///< max_i |operator form - purity form|
  Verdict verdict = Verdict::Inconclusive;
  double global_purity = 0;
  double marginal_purity_a = 0;
  double marginal_purity_b = 0;
};

struct PairInequalityReport {
  double lhs = 0;
  double rhs = 0;
  double margin = 0;  ///< rhs - lhs; >= 0 up to round-off for all valid inputs
};

struct DecompositionInequalityReport {
  double v1 = 0;
  double v2 = 0;
  double avg_concurrence = 0;  ///< Σ_k ||φ_k||^2 c(φ_k/||φ_k||)
  double margin_v1 = 0;        ///< avg_concurrence^2 - v1
  double margin_v2 = 0;
};

/// Squared concurrence 2(1 - Tr rho_A^2) of a unit-norm amplitude vector.
/// Radicands below 1e-14 collapse to zero so product states report an exact
/// zero regardless of rounding path.
double concurrence_sq_unit(const ComplexVector& unit_amplitudes,
                           const BipartiteDims& dims);

/// Pure-state concurrence sqrt(⟨ψ⊗ψ|A|ψ⊗ψ⟩). The copy-operator expectation
/// is cross-checked against the purity form within 1e-9.
double pure_concurrence(const PureState& psi);

/// (v1, v2) via copy-space operator traces Tr((rho⊗rho) V_i).
std::pair<double, double> bound_operator_form(const DensityMatrix& rho);

/// (v1, v2) via the purity identity 2(Tr rho^2 - Tr rho_r^2).
std::pair<double, double> bound_purity_form(const DensityMatrix& rho);

/// Full report with both forms and the witness verdict. Entangled iff
/// max(v1, v2) > kWitnessThreshold; a non-positive bound is inconclusive,
/// never a separability claim.
BoundReport witness(const DensityMatrix& rho);

/// Evaluates both sides of the pairwise bound underlying the average-
/// concurrence estimate: with λ the Schmidt coefficients of phi and ψ the
/// amplitudes of psi expressed in phi's Schmidt local bases,
///   lhs = Σ_{i≠j} Re(ψ*_ii ψ_jj) √(λ_i λ_j) - |ψ_ij|^2 λ_i
///   rhs = sqrt(Σ_{i≠j} λ_i λ_j) * sqrt(Σ_{i≠j, p≠q} |ψ_ip ψ_jq - ψ_iq ψ_jp|^2)
PairInequalityReport verify_pair_inequality(const PureState& psi,
                                            const PureState& phi);

/// Checks Tr(rho⊗rho V_i) <= (Σ_k c(φ_k))^2 for the mixture
/// rho = Σ_k |φ_k⟩⟨φ_k| given by a subnormalized decomposition.
DecompositionInequalityReport verify_decomposition_inequality(
    const Ensemble& decomposition);

}  // namespace concbound
