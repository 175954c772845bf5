#include <doctest.h>

#include "concbound/copyspace.hpp"
#include "concbound/states.hpp"
#include "test_helpers.hpp"

using namespace concbound;
using namespace concbound::testing;

namespace {

// ⟨psi ⊗ phi| obs |psi ⊗ phi⟩ on the copy space.
double copy_expectation(const TwoCopyObservable& obs, const PureState& psi,
                        const PureState& phi) {
  const ComplexVector joint =
      kron(ComplexMatrix(psi.amplitudes), ComplexMatrix(phi.amplitudes));
  const Complex value = joint.dot(obs.matrix * joint);
  REQUIRE(std::abs(value.imag()) <= 1e-10);
  return value.real();
}

}  // namespace

TEST_CASE("swap_operator smallest cases") {
  const ComplexMatrix s1 = swap_operator(1);
  CHECK(s1.rows() == 1);
  CHECK(s1(0, 0) == Complex(1.0));

  const ComplexMatrix s2 = swap_operator(2);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 1.0;  // |00⟩ and |11⟩ fixed
  expected(1, 2) = expected(2, 1) = 1.0;  // |01⟩ ↔ |10⟩
  CHECK(max_abs_diff(s2, expected) == 0.0);
}

TEST_CASE("swap_operator trace counts the parity imbalance") {
  // Oracle: dim(symmetric) - dim(antisymmetric) = d(d+1)/2 - d(d-1)/2 = d.
  const ComplexMatrix s = swap_operator(5);
  CHECK(std::abs(s.trace() - Complex(5.0)) <= 1e-12);
}

TEST_CASE("swap_operator is an involutive Hermitian unitary") {
  const ComplexMatrix s = swap_operator(3);
  CHECK(max_abs_diff(ComplexMatrix(s * s), ComplexMatrix::Identity(9, 9)) == 0.0);
  CHECK(hermiticity_defect(s) == 0.0);
}

TEST_CASE("parity projectors at d = 1 leave no antisymmetric subspace") {
  const auto [pm, pp] = parity_projectors(1);
  CHECK(std::abs(pm(0, 0)) == 0.0);
  CHECK(std::abs(pp(0, 0) - Complex(1.0)) == 0.0);
}

TEST_CASE("parity projector ranks") {
  {
    const auto [pm, pp] = parity_projectors(2);
    CHECK(std::abs(pm.trace() - Complex(1.0)) <= 1e-12);  // singlet projector
    CHECK(std::abs(pp.trace() - Complex(3.0)) <= 1e-12);
  }
  {
    // Oracle: d(d-1)/2 = 10 at d = 5.
    const auto [pm, pp] = parity_projectors(5);
    CHECK(std::abs(pm.trace() - Complex(10.0)) <= 1e-12);
    CHECK(std::abs(pp.trace() - Complex(15.0)) <= 1e-12);
  }
}

TEST_CASE("parity projectors are complete, orthogonal and idempotent") {
  const auto [pm, pp] = parity_projectors(3);
  CHECK(max_abs_diff(ComplexMatrix(pm + pp), ComplexMatrix::Identity(9, 9)) <=
        1e-15);
  CHECK(ComplexMatrix(pm * pp).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(max_abs_diff(ComplexMatrix(pm * pm), pm) <= 1e-15);
  CHECK(max_abs_diff(ComplexMatrix(pp * pp), pp) <= 1e-15);
}

TEST_CASE("copy observables are Hermitian and projectors idempotent") {
  const BipartiteDims dims{2, 3};
  for (ObservableLabel label :
       {ObservableLabel::A, ObservableLabel::V1, ObservableLabel::V2,
        ObservableLabel::Pmm, ObservableLabel::Pmp, ObservableLabel::Ppm,
        ObservableLabel::Ppp}) {
    const TwoCopyObservable& obs = copy_observable(dims, label);
    CHECK(hermiticity_defect(obs.matrix) <= 1e-10);
  }
  for (ObservableLabel label : {ObservableLabel::Pmm, ObservableLabel::Pmp,
                                ObservableLabel::Ppm, ObservableLabel::Ppp}) {
    const TwoCopyObservable& obs = copy_observable(dims, label);
    CHECK(max_abs_diff(ComplexMatrix(obs.matrix * obs.matrix), obs.matrix) <=
          1e-10);
  }
}

TEST_CASE("copy observable cache returns stable references") {
  const TwoCopyObservable& first = copy_observable({2, 2}, ObservableLabel::A);
  const TwoCopyObservable& second = copy_observable({2, 2}, ObservableLabel::A);
  CHECK(&first == &second);
}

TEST_CASE("A expectation on the Bell copy equals 1") {
  // Oracle: purity formula c^2 = 2(1 - Tr (I/2)^2) = 1.
  const PureState bell = bell_phi_plus();
  const auto& a = copy_observable({2, 2}, ObservableLabel::A);
  CHECK(std::abs(copy_expectation(a, bell, bell) - 1.0) <= 1e-10);
}

TEST_CASE("V expectations vanish on product pure copies") {
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexVector a(2), b(3);
    for (int i = 0; i < 2; ++i) a(i) = rng.complex_gaussian();
    for (int i = 0; i < 3; ++i) b(i) = rng.complex_gaussian();
    a /= a.norm();
    b /= b.norm();
    ComplexVector prod(6);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) prod(i * 3 + j) = a(i) * b(j);
    const PureState psi = make_pure({2, 3}, prod);
    const auto& v1 = copy_observable({2, 3}, ObservableLabel::V1);
    const auto& v2 = copy_observable({2, 3}, ObservableLabel::V2);
    CHECK(std::abs(copy_expectation(v1, psi, psi)) <= 1e-10);
    CHECK(std::abs(copy_expectation(v2, psi, psi)) <= 1e-10);
  }
}

TEST_CASE("the four parity projectors are complete on the copy space") {
  const BipartiteDims dims{2, 3};
  const Eigen::Index side = 36;
  ComplexMatrix sum = ComplexMatrix::Zero(side, side);
  for (ObservableLabel label : {ObservableLabel::Pmm, ObservableLabel::Pmp,
                                ObservableLabel::Ppm, ObservableLabel::Ppp}) {
    sum += copy_observable(dims, label).matrix;
  }
  CHECK(max_abs_diff(sum, ComplexMatrix::Identity(side, side)) <= 1e-12);
}

TEST_CASE("V and A decompose over parity projectors") {
  const BipartiteDims dims{3, 3};
  const auto matrix_of = [&](ObservableLabel label) -> const ComplexMatrix& {
    return copy_observable(dims, label).matrix;
  };
  CHECK(max_abs_diff(
            matrix_of(ObservableLabel::V1),
            ComplexMatrix(4.0 * (matrix_of(ObservableLabel::Pmm) -
                                 matrix_of(ObservableLabel::Ppm)))) <= 1e-12);
  CHECK(max_abs_diff(
            matrix_of(ObservableLabel::V2),
            ComplexMatrix(4.0 * (matrix_of(ObservableLabel::Pmm) -
                                 matrix_of(ObservableLabel::Pmp)))) <= 1e-12);
  CHECK(max_abs_diff(matrix_of(ObservableLabel::A),
                     ComplexMatrix(4.0 * matrix_of(ObservableLabel::Pmm))) <=
        1e-12);
}

TEST_CASE("mixed-parity projectors do not see pure two-fold copies") {
  Rng rng(32);
  const BipartiteDims dims{2, 3};
  const auto& pmp = copy_observable(dims, ObservableLabel::Pmp);
  const auto& ppm = copy_observable(dims, ObservableLabel::Ppm);
  for (int trial = 0; trial < 8; ++trial) {
    const PureState psi = haar_pure(dims, rng);
    CHECK(std::abs(copy_expectation(pmp, psi, psi)) <= 1e-10);
    CHECK(std::abs(copy_expectation(ppm, psi, psi)) <= 1e-10);

    const auto& a = copy_observable(dims, ObservableLabel::A);
    const auto& v1 = copy_observable(dims, ObservableLabel::V1);
    const auto& v2 = copy_observable(dims, ObservableLabel::V2);
    const double ea = copy_expectation(a, psi, psi);
    CHECK(std::abs(copy_expectation(v1, psi, psi) - ea) <= 1e-10);
    CHECK(std::abs(copy_expectation(v2, psi, psi) - ea) <= 1e-10);
  }
}

TEST_CASE("a mixed-parity signal certifies a mixed state") {
  Rng rng(33);
  const BipartiteDims dims{2, 2};
  const auto& pmp = copy_observable(dims, ObservableLabel::Pmp);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = trial % 2 == 0
                                  ? random_density_hs(dims, rng)
                                  : density_from_pure(haar_pure(dims, rng));
    const ComplexMatrix copy = kron(rho.matrix, rho.matrix);
    const double signal = trace_of_product(copy, pmp.matrix).real();
    if (signal > 1e-9) {
      CHECK(purity(rho) < 1.0 - 1e-10);
    }
  }
}
