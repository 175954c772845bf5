#pragma once

#include <cstdint>
#include <vector>

#include "concbound/linalg.hpp"
#include "concbound/rng.hpp"

namespace concbound {

/// Normalized state vector on a bipartite space.
struct PureState {
  BipartiteDims dims;
  ComplexVector amplitudes;  ///< length dims.total(), unit norm
};

/// Hermitian, positive-semidefinite, unit-trace matrix on a bipartite space.
struct DensityMatrix {
  BipartiteDims dims;
  ComplexMatrix matrix;  ///< square, side dims.total()
};

/// Biorthogonal expansion |ψ⟩ = Σ √λ_k |a_k⟩⊗|b_k⟩ with λ descending.
/// Coefficients below 1e-12 are trimmed together with their basis columns.
struct SchmidtDecomposition {
  RealVector coefficients;  ///< probabilities λ_k, descending, Σ = 1
  ComplexMatrix basis_a;    ///< orthonormal columns, one per coefficient
  ComplexMatrix basis_b;
};

/// Subnormalized pure-state family {|φ_k⟩}; squared norms carry the mixture
/// weights, Σ_k |φ_k⟩⟨φ_k| is the represented density matrix.
struct Ensemble {
  BipartiteDims dims;
  std::vector<ComplexVector> vectors;
};

/// Configuration of the tripartite random-evolution sampler.
struct RandomEnsembleConfig {
  BipartiteDims dims;
  int env_dim = 0;                ///< 0 selects the default dims.total()
  std::vector<double> time_grid;  ///< empty selects default_time_grid()
  double band_lo = 0.0;           ///< band on mixedness sqrt(1 - Tr rho^2)
  double band_hi = 0.0;
  std::uint64_t seed = 0;
  int count = 0;
};

// Shared validators. Each throws ContractViolation with a message naming the
// violated invariant.
void validate(const PureState& psi);
void validate(const DensityMatrix& rho);
void validate(const RandomEnsembleConfig& cfg);

/// Validating constructors.
PureState make_pure(BipartiteDims dims, ComplexVector amplitudes);
DensityMatrix make_density(BipartiteDims dims, ComplexMatrix matrix);

/// Normalized copy of a raw amplitude vector. Throws DegenerateInput on the
/// zero vector.
PureState pure_from_amplitudes(const BipartiteDims& dims,
                               const ComplexVector& raw);

DensityMatrix density_from_pure(const PureState& psi);

/// (|00⟩ + |11⟩)/√2 on two qubits.
PureState bell_phi_plus();
/// (|01⟩ - |10⟩)/√2 on two qubits.
PureState bell_psi_minus();
/// p |Ψ⁻⟩⟨Ψ⁻| + (1-p) I/4 on two qubits, 0 <= p <= 1.
DensityMatrix werner_state(double p);
DensityMatrix maximally_mixed(const BipartiteDims& dims);

/// Haar-distributed unitary (Ginibre draw + QR with the R diagonal rephased
/// to positive reals).
ComplexMatrix haar_unitary(int dim, Rng& rng);

/// Haar-random pure state (normalized complex Gaussian vector).
PureState haar_pure(const BipartiteDims& dims, Rng& rng);

/// Random density matrix under the Hilbert-Schmidt (Ginibre-induced) measure.
DensityMatrix random_density_hs(const BipartiteDims& dims, Rng& rng);

/// Convex mixture of num_terms Haar-random product states with uniform
/// Dirichlet weights.
DensityMatrix random_separable(const BipartiteDims& dims, int num_terms,
                               Rng& rng);

/// Random mixed states in the requested mixedness band: a tripartite product
/// state evolved by exp(-iHt) for Gaussian-symmetrized H, environment traced
/// out at each grid time, band enforced by rejection. Candidate streams are
/// seeded per draw index from cfg.seed, so output is reproducible and
/// order-independent. Throws YieldError when acceptance falls below one state
/// per 1e5 candidates.
std::vector<DensityMatrix> random_mixed_ensemble(const RandomEnsembleConfig& cfg);

/// As random_mixed_ensemble, but each state also carries the derived seed of
/// the draw that produced it.
struct TracedDensity {
  DensityMatrix state;
  std::uint64_t draw_seed = 0;
};
std::vector<TracedDensity> random_mixed_ensemble_traced(
    const RandomEnsembleConfig& cfg);

SchmidtDecomposition schmidt_decompose(const PureState& psi);

double purity(const DensityMatrix& rho);     ///< Tr rho^2
double mixedness(const DensityMatrix& rho);  ///< sqrt(1 - Tr rho^2)
/// Largest attainable mixedness on the given space, sqrt(1 - 1/(da*db)).
double mixedness_upper_bound(const BipartiteDims& dims);

std::vector<double> default_time_grid();

}  // namespace concbound
