#pragma once

#include <cstdint>

#include "concbound/concurrence.hpp"
#include "concbound/states.hpp"

namespace concbound {

/// Upper estimate of the convex-roof concurrence from ensemble optimization.
struct RoofEstimate {
  double value = 0;  ///< smallest average concurrence found, c(rho) <= value
  int ensemble_size = 0;
  int restarts_used = 0;
  bool converged = false;  ///< best restart met the sweep-improvement criterion
  double final_gradient_norm = 0;  ///< finite-difference rotation gradient at the minimum
};

struct RoofOptions {
  int ensemble_size = 0;  ///< 0 selects default_ensemble_size(rank)
  int restarts = 20;
  int max_sweeps = 500;
  double rel_tol = 1e-8;  ///< convergence: relative improvement per sweep
};

/// Number of eigenvalues above 1e-10.
int density_rank(const DensityMatrix& rho);

/// Default ensemble size min(rank^2, 2*rank).
int default_ensemble_size(int rank);

/// Minimizes the ensemble-average concurrence Σ_k c(φ_k) over all
/// Schrödinger-HJW ensembles {φ_k} of the given size, realized as columns of
/// W T for co-isometric T. Pairwise complex Givens rotations with golden-
/// section line search keep the constraint exact; restarts run from seeds
/// derived per restart index and the minimum is returned, so the result does
/// not depend on scheduling. The estimate is an UPPER bound on c(rho).
/// When best_ensemble is non-null it receives the minimizing ensemble.
RoofEstimate roof_concurrence(const DensityMatrix& rho, const RoofOptions& opts,
                              std::uint64_t seed,
                              Ensemble* best_ensemble = nullptr);

/// The ensemble {columns of W T} for a rank x m co-isometry T (T T† = I);
/// mixes rho's eigendecomposition into an equivalent pure-state family with
/// Σ_k |φ_k⟩⟨φ_k| = rho.
Ensemble ensemble_from_isometry(const DensityMatrix& rho,
                                const ComplexMatrix& t_matrix);

}  // namespace concbound
