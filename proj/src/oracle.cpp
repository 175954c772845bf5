#include "concbound/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <thread>
#include <vector>

namespace concbound {

namespace {

constexpr double kRankTol = 1e-10;
constexpr double kIsometryTol = 1e-9;

/// Columns sqrt(mu_j)|e_j> of rho's eigendecomposition, largest weight first.
Eigen::MatrixXcd support_factor(const DensityMatrix& rho, int& rank_out) {
  const HermitianEig eig = eig_hermitian(rho.matrix);
  const int n = static_cast<int>(eig.values.size());
  int rank = 0;
  for (int k = 0; k < n; ++k)
    if (eig.values(k) > kRankTol) ++rank;
  rank = std::max(rank, 1);

  Eigen::MatrixXcd w(n, rank);
  for (int k = 0; k < rank; ++k) {
    const int src = n - 1 - k;  // eig_hermitian sorts ascending
    w.col(k) = std::sqrt(std::max(0.0, eig.values(src))) *
               ComplexVector(eig.vectors.col(src));
  }
  rank_out = rank;
  return w;
}

/// c(phi) for a subnormalized member: sqrt(2((Tr G)^2 - Tr G^2)) with G the
/// Gram matrix of the smaller factor. Shares the noise-floor convention of
/// concurrence_sq_unit (radicand below 1e-14 of scale snaps to zero) so
/// optimizer values agree with pure_concurrence on pure inputs.
double member_concurrence(const Complex* v, int da, int db) {
  const bool a_small = da <= db;
  const int s = a_small ? da : db;
  const int l = a_small ? db : da;
  if (s > 8) {  // beyond desk scale; keep a generic fallback
    Eigen::Map<const ComplexVector> vec(v, da * db);
    const double n2 = vec.squaredNorm();
    if (n2 <= 1e-30) return 0.0;
    Eigen::Map<const ComplexMatrix> m(v, da, db);
    const double tr_sq = a_small ? (m * m.adjoint()).squaredNorm()
                                 : (m.adjoint() * m).squaredNorm();
    double r = n2 * n2 - tr_sq;
    if (r < 1e-14 * n2 * n2) r = 0.0;
    return std::sqrt(2.0 * r);
  }

  Complex gram[8 * 8];
  if (a_small) {
    // G = M M†, rows of the row-major reshape are contiguous.
    for (int a = 0; a < s; ++a) {
      for (int b = a; b < s; ++b) {
        Complex acc = 0;
        const Complex* ra = v + a * db;
        const Complex* rb = v + b * db;
        for (int j = 0; j < l; ++j) acc += ra[j] * std::conj(rb[j]);
        gram[a * s + b] = acc;
      }
    }
  } else {
    // G = M† M over strided columns.
    for (int p = 0; p < s; ++p) {
      for (int q = p; q < s; ++q) {
        Complex acc = 0;
        for (int i = 0; i < l; ++i)
          acc += std::conj(v[i * db + p]) * v[i * db + q];
        gram[p * s + q] = acc;
      }
    }
  }
  double tr = 0, tr_sq = 0;
  for (int i = 0; i < s; ++i) {
    tr += gram[i * s + i].real();
    tr_sq += std::norm(gram[i * s + i]);
    for (int j = i + 1; j < s; ++j) tr_sq += 2.0 * std::norm(gram[i * s + j]);
  }
  double r = tr * tr - tr_sq;
  if (r < 1e-14 * tr * tr) r = 0.0;
  return std::sqrt(2.0 * r);
}

double member_concurrence(const ComplexVector& phi, const BipartiteDims& dims) {
  return member_concurrence(phi.data(), dims.dim_a, dims.dim_b);
}

struct TrialColumns {
  ComplexVector p, q;
};

/// Writes the rotated columns into preallocated scratch.
void rotate_pair_into(const Eigen::MatrixXcd& phi, int p, int q, double theta,
                      double phase, TrialColumns& out) {
  const double c = std::cos(theta), s = std::sin(theta);
  const Complex e = std::polar(1.0, phase);
  out.p.noalias() = c * phi.col(p) + (e * s) * phi.col(q);
  out.q.noalias() = (-std::conj(e) * s) * phi.col(p) + c * phi.col(q);
}

TrialColumns rotate_pair(const Eigen::MatrixXcd& phi, int p, int q,
                         double theta, double phase) {
  TrialColumns out;
  out.p.resize(phi.rows());
  out.q.resize(phi.rows());
  rotate_pair_into(phi, p, q, theta, phase, out);
  return out;
}

template <typename F>
std::pair<double, double> golden_min(F f, double lo, double hi, int iters) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

struct DescentResult {
  double value = 0;
  bool converged = false;
  Eigen::MatrixXcd phi;
};

DescentResult minimize_average(const BipartiteDims& dims, Eigen::MatrixXcd phi,
                               const RoofOptions& opts) {
  const int da = dims.dim_a, db = dims.dim_b;
  const int m = static_cast<int>(phi.cols());
  std::vector<double> col_c(m);
  double total = 0;
  for (int k = 0; k < m; ++k) {
    col_c[k] = member_concurrence(phi.col(k).data(), da, db);
    total += col_c[k];
  }
  if (m < 2) return {total, true, std::move(phi)};

  constexpr double kPhases[2] = {0.0, std::numbers::pi / 2.0};
  constexpr double kMinStep = 1e-3;
  constexpr int kGoldenIters = 12;

  TrialColumns scratch;
  scratch.p.resize(phi.rows());
  scratch.q.resize(phi.rows());

  double step = std::numbers::pi / 2.0;
  bool converged = false;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const double before = total;
    for (int p = 0; p < m; ++p) {
      for (int q = p + 1; q < m; ++q) {
        const double base = col_c[p] + col_c[q];
        double best_delta = 0, best_theta = 0, best_phase = 0;
        for (double phase : kPhases) {
          auto objective = [&](double theta) {
            rotate_pair_into(phi, p, q, theta, phase, scratch);
            return member_concurrence(scratch.p.data(), da, db) +
                   member_concurrence(scratch.q.data(), da, db);
          };
          const auto [theta, value] =
              golden_min(objective, -step, step, kGoldenIters);
          if (value - base < best_delta) {
            best_delta = value - base;
            best_theta = theta;
            best_phase = phase;
          }
        }
        // Deadband: ignore noise-level gains so sweeps settle to exactly
        // zero improvement at a minimum instead of re-harvesting
        // line-search dust forever.
        if (best_delta < -1e-10 * std::max(1.0, base)) {
          rotate_pair_into(phi, p, q, best_theta, best_phase, scratch);
          phi.col(p) = scratch.p;
          phi.col(q) = scratch.q;
          col_c[p] = member_concurrence(scratch.p.data(), da, db);
          col_c[q] = member_concurrence(scratch.q.data(), da, db);
        }
      }
    }
    total = 0;
    for (double c : col_c) total += c;

    const double improvement = before - total;
    if (improvement <= opts.rel_tol * std::max(before, 1e-9)) {
      if (step <= kMinStep) {
        converged = true;
        break;
      }
      step = std::max(kMinStep, step / 8.0);
    }
  }
  return {total, converged, std::move(phi)};
}

/// Root-sum-square of finite-difference derivatives of the average
/// concurrence with respect to pair rotation angles at the found minimum.
double rotation_gradient_norm(const BipartiteDims& dims,
                              const Eigen::MatrixXcd& phi) {
  const int m = static_cast<int>(phi.cols());
  if (m < 2) return 0.0;
  const double h = 1e-5;
  constexpr double kPhases[2] = {0.0, std::numbers::pi / 2.0};

  // Cap the sampled pairs so the diagnostic stays cheap on wide ensembles.
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < m; ++p)
    for (int q = p + 1; q < m; ++q) pairs.emplace_back(p, q);
  const std::size_t cap = 128;
  const std::size_t stride = std::max<std::size_t>(1, pairs.size() / cap);

  double norm_sq = 0;
  for (std::size_t i = 0; i < pairs.size(); i += stride) {
    const auto [p, q] = pairs[i];
    for (double phase : kPhases) {
      const TrialColumns plus = rotate_pair(phi, p, q, h, phase);
      const TrialColumns minus = rotate_pair(phi, p, q, -h, phase);
      const double g = (member_concurrence(plus.p, dims) +
                        member_concurrence(plus.q, dims) -
                        member_concurrence(minus.p, dims) -
                        member_concurrence(minus.q, dims)) /
                       (2.0 * h);
      norm_sq += g * g;
    }
  }
  return std::sqrt(norm_sq);
}

Eigen::MatrixXcd random_coisometry(int rank, int m, Rng& rng) {
  ComplexMatrix u = haar_unitary(m, rng);
  return Eigen::MatrixXcd(u).topRows(rank);
}

}  // namespace

int density_rank(const DensityMatrix& rho) {
  validate(rho);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix,
                                                      Eigen::EigenvaluesOnly);
  int rank = 0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
    if (solver.eigenvalues()(k) > kRankTol) ++rank;
  return std::max(rank, 1);
}

int default_ensemble_size(int rank) {
  return std::min(rank * rank, 2 * rank);
}

RoofEstimate roof_concurrence(const DensityMatrix& rho, const RoofOptions& opts,
                              std::uint64_t seed, Ensemble* best_ensemble) {
  validate(rho);
  int rank = 0;
  const Eigen::MatrixXcd w = support_factor(rho, rank);
  const int m =
      opts.ensemble_size > 0 ? opts.ensemble_size : default_ensemble_size(rank);
  if (m < rank) {
    throw ContractViolation("roof_concurrence: ensemble_size " +
                            std::to_string(m) + " is below rank " +
                            std::to_string(rank));
  }
  const int restarts = std::max(1, opts.restarts);

  struct Best {
    double value = std::numeric_limits<double>::infinity();
    int index = -1;
    bool converged = false;
    Eigen::MatrixXcd phi;
  } best;
  std::mutex best_mutex;
  std::atomic<int> next{0};

  auto worker = [&]() {
    for (int r = next.fetch_add(1); r < restarts; r = next.fetch_add(1)) {
      Rng rng(Rng::derive(seed, r));
      Eigen::MatrixXcd t;
      if (r == 0) {
        // Canonical start: the eigendecomposition ensemble itself.
        t = Eigen::MatrixXcd::Zero(rank, m);
        t.topLeftCorner(rank, rank) = Eigen::MatrixXcd::Identity(rank, rank);
      } else {
        t = random_coisometry(rank, m, rng);
      }
      DescentResult result = minimize_average(rho.dims, w * t, opts);
      std::lock_guard<std::mutex> lock(best_mutex);
      // Tie-break on restart index for scheduling-independent results.
      if (result.value < best.value ||
          (result.value == best.value && r < best.index)) {
        best.value = result.value;
        best.index = r;
        best.converged = result.converged;
        best.phi = std::move(result.phi);
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned n_threads = std::min<unsigned>(hw, restarts);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  RoofEstimate estimate;
  estimate.value = best.value;
  estimate.ensemble_size = m;
  estimate.restarts_used = restarts;
  estimate.converged = best.converged;
  estimate.final_gradient_norm = rotation_gradient_norm(rho.dims, best.phi);
  if (best_ensemble != nullptr) {
    best_ensemble->dims = rho.dims;
    best_ensemble->vectors.clear();
    for (int k = 0; k < m; ++k) best_ensemble->vectors.push_back(best.phi.col(k));
  }
  return estimate;
}

Ensemble ensemble_from_isometry(const DensityMatrix& rho,
                                const ComplexMatrix& t_matrix) {
  validate(rho);
  int rank = 0;
  const Eigen::MatrixXcd w = support_factor(rho, rank);
  if (t_matrix.rows() != rank) {
    throw ContractViolation("ensemble_from_isometry: t_matrix has " +
                            std::to_string(t_matrix.rows()) +
                            " rows but rho has rank " + std::to_string(rank));
  }
  if (t_matrix.cols() < t_matrix.rows()) {
    throw ContractViolation(
        "ensemble_from_isometry: t_matrix needs at least rank columns");
  }
  const ComplexMatrix gram = t_matrix * t_matrix.adjoint();
  const double defect =
      (gram - ComplexMatrix::Identity(rank, rank)).cwiseAbs().maxCoeff();
  if (defect > kIsometryTol) {
    throw ContractViolation(
        "ensemble_from_isometry: T T† deviates from identity by " +
        std::to_string(defect));
  }
  const Eigen::MatrixXcd phi = w * Eigen::MatrixXcd(t_matrix);
  Ensemble out;
  out.dims = rho.dims;
  for (Eigen::Index k = 0; k < phi.cols(); ++k) out.vectors.push_back(phi.col(k));
  return out;
}

}  // namespace concbound
