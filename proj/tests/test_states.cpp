#include <doctest.h>

#include <cmath>
#include <numbers>

#include "concbound/states.hpp"
#include "test_helpers.hpp"

using namespace concbound;
using namespace concbound::testing;

TEST_CASE("pure_from_amplitudes normalizes") {
  ComplexVector raw(4);
  raw << 1, 0, 0, 1;
  const PureState psi = pure_from_amplitudes({2, 2}, raw);
  CHECK(std::abs(psi.amplitudes.norm() - 1.0) <= 1e-12);
  CHECK(std::abs(psi.amplitudes(0) - Complex(1.0 / std::numbers::sqrt2)) <= 1e-15);
  CHECK(std::abs(psi.amplitudes(3) - Complex(1.0 / std::numbers::sqrt2)) <= 1e-15);
}

TEST_CASE("pure_from_amplitudes handles a single basis amplitude") {
  ComplexVector raw = ComplexVector::Zero(4);
  raw(3) = 2.0;
  const PureState psi = pure_from_amplitudes({2, 2}, raw);
  CHECK(std::abs(psi.amplitudes(3) - Complex(1.0)) <= 1e-15);
  CHECK(psi.amplitudes.head(3).norm() == 0.0);
}

TEST_CASE("pure_from_amplitudes normalizes random vectors to 1e-12") {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexVector raw(6);
    for (int i = 0; i < 6; ++i) raw(i) = rng.complex_gaussian();
    const PureState psi = pure_from_amplitudes({2, 3}, raw);
    CHECK(std::abs(psi.amplitudes.norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("pure_from_amplitudes rejects the zero vector") {
  CHECK_THROWS_AS(pure_from_amplitudes({2, 2}, ComplexVector::Zero(4)),
                  DegenerateInput);
}

TEST_CASE("werner endpoints") {
  const DensityMatrix mixed = werner_state(0.0);
  CHECK(max_abs_diff(mixed.matrix, ComplexMatrix::Identity(4, 4) / 4.0) <= 1e-15);

  const DensityMatrix singlet = werner_state(1.0);
  const PureState psi = bell_psi_minus();
  CHECK(max_abs_diff(singlet.matrix,
                     ComplexMatrix(psi.amplitudes * psi.amplitudes.adjoint())) <=
        1e-15);
}

TEST_CASE("werner purity at p = 0.5") {
  // Oracle: direct matrix squaring and trace.
  const DensityMatrix rho = werner_state(0.5);
  const Complex direct = (rho.matrix * rho.matrix).trace();
  CHECK(std::abs(direct.real() - 0.4375) <= 1e-12);
  CHECK(std::abs(purity(rho) - direct.real()) <= 1e-12);
}

TEST_CASE("werner rejects out-of-range mixing") {
  CHECK_THROWS_AS(werner_state(-0.1), ContractViolation);
  CHECK_THROWS_AS(werner_state(1.1), ContractViolation);
}

TEST_CASE("haar_unitary at dim 1 is a unit-modulus scalar") {
  Rng rng(22);
  const ComplexMatrix u = haar_unitary(1, rng);
  CHECK(std::abs(std::abs(u(0, 0)) - 1.0) <= 1e-12);
}

TEST_CASE("haar_unitary is unitary at dim 12") {
  Rng rng(23);
  const ComplexMatrix u = haar_unitary(12, rng);
  CHECK(max_abs_diff(ComplexMatrix(u * u.adjoint()),
                     ComplexMatrix::Identity(12, 12)) <= 1e-9);
}

TEST_CASE("haar_unitary first-entry moment matches E|U_ij|^2 = 1/dim") {
  // Monte-Carlo check of the Haar moment at dim 4, fixed seed.
  Rng rng(24);
  const int samples = 100000;
  double sum = 0, sum_sq = 0;
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix u = haar_unitary(4, rng);
    const double x = std::norm(u(0, 0));
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / samples;
  const double var = sum_sq / samples - mean * mean;
  const double se = std::sqrt(var / samples);
  CHECK(std::abs(mean - 0.25) <= 3.0 * se);
}

TEST_CASE("haar_unitary distribution is left-invariant") {
  // Left-multiplying by a fixed unitary must not shift the |entry|^2 moment.
  Rng rng(25);
  ComplexMatrix v(3, 3);
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      v(r, c) = std::pow(w, double(r * c)) / std::sqrt(3.0);

  const int samples = 20000;
  double sum = 0, sum_sq = 0;
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix u = v * haar_unitary(3, rng);
    const double x = std::norm(u(1, 2));
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
  CHECK(std::abs(mean - 1.0 / 3.0) <= 4.0 * se);
}

TEST_CASE("haar_unitary eigenvalue phases are uniform on the circle") {
  // Chi-square over 20 bins at 1% significance, fixed seed: the 10^4 samples
  // at dim 4 give 40000 phases, expected 2000 per bin.
  Rng rng(26);
  const int samples = 10000, dim = 4, bins = 20;
  std::vector<long long> histogram(bins, 0);
  for (int s = 0; s < samples; ++s) {
    const Eigen::MatrixXcd u = haar_unitary(dim, rng);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(u);
    for (int k = 0; k < dim; ++k) {
      double phase = std::arg(solver.eigenvalues()(k));  // (-pi, pi]
      double unit = (phase + std::numbers::pi) / (2.0 * std::numbers::pi);
      int bin = std::min(bins - 1, static_cast<int>(unit * bins));
      ++histogram[bin];
    }
  }
  const double expected = double(samples) * dim / bins;
  double chi_sq = 0;
  for (long long observed : histogram) {
    const double d = observed - expected;
    chi_sq += d * d / expected;
  }
  CHECK(chi_sq <= 36.19086912927004);  // chi^2 upper 1% quantile, 19 dof
}

TEST_CASE("random_density_hs satisfies the density-matrix invariants") {
  Rng rng(27);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = random_density_hs({2, 3}, rng);
    CHECK_NOTHROW(validate(rho));
  }
}

TEST_CASE("random_separable outputs are valid mixtures") {
  Rng rng(28);
  for (int terms : {1, 3, 10}) {
    const DensityMatrix rho = random_separable({2, 2}, terms, rng);
    CHECK_NOTHROW(validate(rho));
  }
  CHECK_THROWS_AS(random_separable({2, 2}, 0, rng), ContractViolation);
}

TEST_CASE("random_mixed_ensemble with t = 0 returns near-pure states") {
  RandomEnsembleConfig cfg;
  cfg.dims = {2, 2};
  cfg.time_grid = {0.0};
  cfg.band_lo = 0.0;
  cfg.band_hi = 0.01;
  cfg.seed = 5;
  cfg.count = 3;
  for (const DensityMatrix& rho : random_mixed_ensemble(cfg)) {
    CHECK(mixedness(rho) <= 0.01);
  }
}

TEST_CASE("random_mixed_ensemble hits the weakly mixed band on 2x5") {
  RandomEnsembleConfig cfg;
  cfg.dims = {2, 5};
  cfg.band_lo = 0.2;
  cfg.band_hi = 0.21;
  cfg.seed = 6;
  cfg.count = 4;
  for (const DensityMatrix& rho : random_mixed_ensemble(cfg)) {
    const double mix = mixedness(rho);
    CHECK(mix >= 0.2);
    CHECK(mix <= 0.21);
    CHECK(rho.dims == BipartiteDims{2, 5});
  }
}

TEST_CASE("random_mixed_ensemble hits the strongly mixed band on 3x3") {
  RandomEnsembleConfig cfg;
  cfg.dims = {3, 3};
  cfg.band_lo = 0.529;
  cfg.band_hi = 0.533;
  cfg.seed = 7;
  cfg.count = 4;
  // Denser grid than the default: narrow high bands are crossed quickly.
  for (int i = 0; i < 64; ++i)
    cfg.time_grid.push_back(0.02 * std::pow(6.0 / 0.02, i / 63.0));
  for (const DensityMatrix& rho : random_mixed_ensemble(cfg)) {
    const double mix = mixedness(rho);
    CHECK(mix >= 0.529);
    CHECK(mix <= 0.533);
  }
}

TEST_CASE("random_mixed_ensemble is bit-reproducible for a fixed seed") {
  RandomEnsembleConfig cfg;
  cfg.dims = {2, 3};
  cfg.band_lo = 0.2;
  cfg.band_hi = 0.3;
  cfg.seed = 99;
  cfg.count = 3;
  const auto first = random_mixed_ensemble(cfg);
  const auto second = random_mixed_ensemble(cfg);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(max_abs_diff(first[i].matrix, second[i].matrix) == 0.0);
  }
}

TEST_CASE("random_mixed_ensemble reports hopeless bands") {
  RandomEnsembleConfig cfg;
  cfg.dims = {2, 2};
  cfg.env_dim = 1;        // unitary evolution only: states stay pure
  cfg.time_grid = {0.0};
  cfg.band_lo = 0.5;
  cfg.band_hi = 0.6;
  cfg.seed = 1;
  cfg.count = 1;
  CHECK_THROWS_AS(random_mixed_ensemble(cfg), YieldError);
}

TEST_CASE("ensemble config validation rejects bad bands") {
  RandomEnsembleConfig cfg;
  cfg.dims = {2, 2};
  cfg.count = 1;
  cfg.band_lo = 0.3;
  cfg.band_hi = 0.2;
  CHECK_THROWS_AS(validate(cfg), ContractViolation);
  cfg.band_lo = 0.2;
  cfg.band_hi = 0.9;  // above sqrt(1 - 1/4)
  CHECK_THROWS_AS(validate(cfg), ContractViolation);
}

TEST_CASE("schmidt of a product state has a single coefficient") {
  ComplexVector raw = ComplexVector::Zero(4);
  raw(0) = 1.0;
  const SchmidtDecomposition schmidt =
      schmidt_decompose(make_pure({2, 2}, raw));
  REQUIRE(schmidt.coefficients.size() == 1);
  CHECK(schmidt.coefficients(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("schmidt of the Bell state is balanced") {
  const SchmidtDecomposition schmidt = schmidt_decompose(bell_phi_plus());
  REQUIRE(schmidt.coefficients.size() == 2);
  CHECK(schmidt.coefficients(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(schmidt.coefficients(1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("schmidt reconstructs random states") {
  Rng rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const PureState psi = haar_pure({3, 3}, rng);
    const SchmidtDecomposition schmidt = schmidt_decompose(psi);

    CHECK(std::abs(schmidt.coefficients.sum() - 1.0) <= 1e-9);
    for (int k = 0; k + 1 < schmidt.coefficients.size(); ++k) {
      CHECK(schmidt.coefficients(k) >= schmidt.coefficients(k + 1));
    }

    ComplexVector rebuilt = ComplexVector::Zero(9);
    for (int k = 0; k < schmidt.coefficients.size(); ++k) {
      const double amp = std::sqrt(schmidt.coefficients(k));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          rebuilt(i * 3 + j) +=
              amp * schmidt.basis_a(i, k) * schmidt.basis_b(j, k);
    }
    CHECK(max_abs_diff(rebuilt, psi.amplitudes) <= 1e-8);

    // Local bases are orthonormal.
    CHECK(max_abs_diff(
              ComplexMatrix(schmidt.basis_a.adjoint() * schmidt.basis_a),
              ComplexMatrix::Identity(schmidt.coefficients.size(),
                                      schmidt.coefficients.size())) <= 1e-10);
    CHECK(max_abs_diff(
              ComplexMatrix(schmidt.basis_b.adjoint() * schmidt.basis_b),
              ComplexMatrix::Identity(schmidt.coefficients.size(),
                                      schmidt.coefficients.size())) <= 1e-10);
  }
}

TEST_CASE("schmidt coefficients equal the reduced-state spectra") {
  Rng rng(30);
  const PureState psi = haar_pure({2, 3}, rng);
  const SchmidtDecomposition schmidt = schmidt_decompose(psi);
  const DensityMatrix rho = density_from_pure(psi);
  const HermitianEig eig =
      eig_hermitian(partial_trace(rho.matrix, rho.dims, Subsystem::A));
  // Ascending eigenvalues vs descending coefficients.
  for (int k = 0; k < schmidt.coefficients.size(); ++k) {
    const double lambda = eig.values(eig.values.size() - 1 - k);
    CHECK(std::abs(schmidt.coefficients(k) - lambda) <= 1e-8);
  }
}

TEST_CASE("schmidt rejects non-normalized input") {
  PureState bad{{2, 2}, ComplexVector::Zero(4)};
  bad.amplitudes(0) = 2.0;
  CHECK_THROWS_AS(schmidt_decompose(bad), ContractViolation);
}
