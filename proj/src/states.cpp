#include "concbound/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace concbound {

namespace {

constexpr double kNormTol = 1e-9;
constexpr double kHermTol = 1e-9;
constexpr double kTraceTol = 1e-9;
constexpr double kPsdTol = 1e-9;

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
  return g;
}

ComplexVector gaussian_vector(int dim, Rng& rng) {
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
  return v;
}

}  // namespace

void validate(const PureState& psi) {
  check_dims(psi.dims);
  if (psi.amplitudes.size() != psi.dims.total()) {
    throw ContractViolation(
        "pure state: amplitude length " + std::to_string(psi.amplitudes.size()) +
        " does not match dims " + std::to_string(psi.dims.dim_a) + "x" +
        std::to_string(psi.dims.dim_b));
  }
  if (!psi.amplitudes.allFinite()) {
    throw ContractViolation("pure state: non-finite amplitudes");
  }
  const double norm = psi.amplitudes.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw ContractViolation("pure state: norm deviates from 1 by " +
                            std::to_string(std::abs(norm - 1.0)));
  }
}

void validate(const DensityMatrix& rho) {
  check_dims(rho.dims);
  const int side = rho.dims.total();
  if (rho.matrix.rows() != side || rho.matrix.cols() != side) {
    throw ContractViolation("density matrix: side " +
                            std::to_string(rho.matrix.rows()) + "x" +
                            std::to_string(rho.matrix.cols()) +
                            " does not match dims product " +
                            std::to_string(side));
  }
  if (!rho.matrix.allFinite()) {
    throw ContractViolation("density matrix: non-finite entries");
  }
  const double herm = hermiticity_defect(rho.matrix);
  if (herm > kHermTol) {
    throw ContractViolation("density matrix: deviates from Hermitian by " +
                            std::to_string(herm));
  }
  const double trace_dev = std::abs(rho.matrix.trace().real() - 1.0);
  if (trace_dev > kTraceTol || std::abs(rho.matrix.trace().imag()) > kTraceTol) {
    throw ContractViolation("density matrix: trace deviates from 1 by " +
                            std::to_string(trace_dev));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      (rho.matrix + rho.matrix.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kPsdTol) {
    throw ContractViolation(
        "density matrix: not positive semidefinite, min eigenvalue " +
        std::to_string(min_eig));
  }
}

void validate(const RandomEnsembleConfig& cfg) {
  check_dims(cfg.dims);
  if (cfg.env_dim < 0) {
    throw ContractViolation("ensemble config: env_dim must be positive");
  }
  if (cfg.count < 0) {
    throw ContractViolation("ensemble config: count must be non-negative");
  }
  const double cap = mixedness_upper_bound(cfg.dims);
  if (!(cfg.band_lo >= 0.0 && cfg.band_lo < cfg.band_hi && cfg.band_hi <= cap)) {
    throw ContractViolation(
        "ensemble config: mixedness band must satisfy 0 <= lo < hi <= " +
        std::to_string(cap));
  }
  for (double t : cfg.time_grid) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
      throw ContractViolation("ensemble config: times must be non-negative");
    }
  }
}

PureState make_pure(BipartiteDims dims, ComplexVector amplitudes) {
  PureState psi{dims, std::move(amplitudes)};
  validate(psi);
  return psi;
}

DensityMatrix make_density(BipartiteDims dims, ComplexMatrix matrix) {
  DensityMatrix rho{dims, std::move(matrix)};
  // Validate on the raw input, then store the symmetrized matrix so both
  // bound forms see exactly Hermitian data.
  validate(rho);
  rho.matrix = ((rho.matrix + rho.matrix.adjoint()) / 2.0).eval();
  return rho;
}

PureState pure_from_amplitudes(const BipartiteDims& dims,
                               const ComplexVector& raw) {
  check_dims(dims);
  if (raw.size() != dims.total()) {
    throw ContractViolation("pure_from_amplitudes: length " +
                            std::to_string(raw.size()) + " does not match dims");
  }
  const double norm = raw.norm();
  if (!(norm > 0.0) || !raw.allFinite()) {
    throw DegenerateInput("pure_from_amplitudes: zero or non-finite vector");
  }
  return make_pure(dims, raw / norm);
}

DensityMatrix density_from_pure(const PureState& psi) {
  validate(psi);
  ComplexMatrix m = psi.amplitudes * psi.amplitudes.adjoint();
  return make_density(psi.dims, std::move(m));
}

PureState bell_phi_plus() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::numbers::sqrt2;
  return make_pure({2, 2}, std::move(v));
}

PureState bell_psi_minus() {
  ComplexVector v = ComplexVector::Zero(4);
  v(1) = 1.0 / std::numbers::sqrt2;
  v(2) = -1.0 / std::numbers::sqrt2;
  return make_pure({2, 2}, std::move(v));
}

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ContractViolation("werner_state: p must lie in [0, 1], got " +
                            std::to_string(p));
  }
  const PureState singlet = bell_psi_minus();
  ComplexMatrix m = p * (singlet.amplitudes * singlet.amplitudes.adjoint());
  m += (1.0 - p) / 4.0 * ComplexMatrix::Identity(4, 4);
  return make_density({2, 2}, std::move(m));
}

DensityMatrix maximally_mixed(const BipartiteDims& dims) {
  check_dims(dims);
  const int n = dims.total();
  return make_density(dims, ComplexMatrix::Identity(n, n) / double(n));
}

ComplexMatrix haar_unitary(int dim, Rng& rng) {
  if (dim < 1) throw ContractViolation("haar_unitary: dim must be >= 1");
  const ComplexMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Rephase so the implicit R has a positive diagonal; this makes Q exactly
  // Haar rather than merely unitary.
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

PureState haar_pure(const BipartiteDims& dims, Rng& rng) {
  check_dims(dims);
  return pure_from_amplitudes(dims, gaussian_vector(dims.total(), rng));
}

DensityMatrix random_density_hs(const BipartiteDims& dims, Rng& rng) {
  check_dims(dims);
  const int n = dims.total();
  const ComplexMatrix g = ginibre(n, n, rng);
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return make_density(dims, std::move(m));
}

DensityMatrix random_separable(const BipartiteDims& dims, int num_terms,
                               Rng& rng) {
  check_dims(dims);
  if (num_terms < 1) {
    throw ContractViolation("random_separable: num_terms must be >= 1");
  }
  // Dirichlet(1,...,1) weights via normalized exponentials.
  std::vector<double> w(num_terms);
  double w_sum = 0.0;
  for (double& x : w) {
    x = -std::log(rng.uniform_open());
    w_sum += x;
  }
  const int n = dims.total();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < num_terms; ++k) {
    ComplexVector a = gaussian_vector(dims.dim_a, rng);
    ComplexVector b = gaussian_vector(dims.dim_b, rng);
    a /= a.norm();
    b /= b.norm();
    ComplexVector prod(n);
    for (int i = 0; i < dims.dim_a; ++i)
      for (int j = 0; j < dims.dim_b; ++j) prod(i * dims.dim_b + j) = a(i) * b(j);
    m += (w[k] / w_sum) * (prod * prod.adjoint());
  }
  return make_density(dims, std::move(m));
}

std::vector<double> default_time_grid() {
  const double lo = 0.05, hi = 5.0;
  const int n = 16;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) {
    grid[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
  }
  return grid;
}

std::vector<TracedDensity> random_mixed_ensemble_traced(
    const RandomEnsembleConfig& cfg) {
  validate(cfg);
  const int sys = cfg.dims.total();
  const int env = cfg.env_dim > 0 ? cfg.env_dim : sys;
  const std::vector<double> grid =
      cfg.time_grid.empty() ? default_time_grid() : cfg.time_grid;
  const int total = sys * env;

  std::vector<TracedDensity> accepted;
  accepted.reserve(cfg.count);
  long long attempts = 0;

  for (std::uint64_t draw = 0; static_cast<int>(accepted.size()) < cfg.count;
       ++draw) {
    const std::uint64_t draw_seed = Rng::derive(cfg.seed, draw);
    Rng rng(draw_seed);
    const ComplexMatrix g = ginibre(total, total, rng);
    // The 1/sqrt(total) factor pins the spectral radius near sqrt(2)
    // regardless of dimension, so one time grid spans weakly to strongly
    // mixed states for every desk-scale dims.
    const ComplexMatrix h = (g + g.adjoint()) / (2.0 * std::sqrt(double(total)));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
      throw NumericalIntegrity("random_mixed_ensemble: eigensolver failed");
    }
    // exp(-iHt)|0⟩ = U diag(exp(-i eps t)) U†|0⟩, computed once per draw.
    const ComplexVector u0 = solver.eigenvectors().adjoint().col(0);
    for (double t : grid) {
      ComplexVector phases(total);
      for (int k = 0; k < total; ++k) {
        phases(k) = std::polar(1.0, -solver.eigenvalues()(k) * t) * u0(k);
      }
      const ComplexVector psi = solver.eigenvectors() * phases;
      // Reshape to sys x env and trace out the environment.
      Eigen::Map<const ComplexMatrix> mat(psi.data(), sys, env);
      ComplexMatrix rho = mat * mat.adjoint();
      ++attempts;
      const double pur = std::min(1.0, rho.squaredNorm());
      const double mix = std::sqrt(std::max(0.0, 1.0 - pur));
      if (mix >= cfg.band_lo && mix <= cfg.band_hi) {
        accepted.push_back({make_density(cfg.dims, std::move(rho)), draw_seed});
        if (static_cast<int>(accepted.size()) == cfg.count) break;
      }
      if (attempts >= 100000 &&
          static_cast<long long>(accepted.size()) * 100000 < attempts) {
        throw YieldError(
            "random_mixed_ensemble: acceptance below 1 per 1e5 candidates; "
            "widen the mixedness band or adjust env_dim/time_grid");
      }
    }
  }
  return accepted;
}

std::vector<DensityMatrix> random_mixed_ensemble(const RandomEnsembleConfig& cfg) {
  std::vector<TracedDensity> traced = random_mixed_ensemble_traced(cfg);
  std::vector<DensityMatrix> out;
  out.reserve(traced.size());
  for (auto& item : traced) out.push_back(std::move(item.state));
  return out;
}

SchmidtDecomposition schmidt_decompose(const PureState& psi) {
  validate(psi);
  const int da = psi.dims.dim_a, db = psi.dims.dim_b;
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      mat(psi.amplitudes.data(), da, db);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      mat, Eigen::ComputeFullU | Eigen::ComputeFullV);

  const int full = std::min(da, db);
  int rank = 0;
  for (int k = 0; k < full; ++k) {
    const double lambda = svd.singularValues()(k) * svd.singularValues()(k);
    if (lambda >= 1e-12 || k == 0) rank = k + 1;
  }

  SchmidtDecomposition out;
  out.coefficients = RealVector(rank);
  out.basis_a = ComplexMatrix(da, rank);
  out.basis_b = ComplexMatrix(db, rank);
  for (int k = 0; k < rank; ++k) {
    out.coefficients(k) = svd.singularValues()(k) * svd.singularValues()(k);
    out.basis_a.col(k) = svd.matrixU().col(k);
    out.basis_b.col(k) = svd.matrixV().col(k).conjugate();
  }
  return out;
}

double purity(const DensityMatrix& rho) {
  // Tr rho^2 = ||rho||_F^2 for Hermitian rho (stored symmetrized).
  return rho.matrix.squaredNorm();
}

double mixedness(const DensityMatrix& rho) {
  return std::sqrt(std::max(0.0, 1.0 - purity(rho)));
}

double mixedness_upper_bound(const BipartiteDims& dims) {
  check_dims(dims);
  return std::sqrt(1.0 - 1.0 / double(dims.total()));
}

}  // namespace concbound
