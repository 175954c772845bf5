#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "concbound/error.hpp"

namespace concbound {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Row-major matches the flattening used by
/// the JSON and CSV interfaces, so serialized data maps straight onto storage.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Tensor factor convention used throughout: the leftmost factor is the most
// significant digit of the composite index, |i⟩⊗|j⟩ ↦ i*d_j + j (the plain
// Kronecker convention).

/// Factor dimensions of a bipartite space. Both factors are at least 2.
struct BipartiteDims {
  int dim_a = 0;
  int dim_b = 0;

  int total() const { return dim_a * dim_b; }
  bool operator==(const BipartiteDims&) const = default;
};

/// Throws ContractViolation unless both factor dimensions are >= 2.
void check_dims(const BipartiteDims& dims);

/// Default cap on the side length of any matrix produced by kron().
inline constexpr int kMaxKronDim = 4096;

/// Kronecker product. Throws SizeError if the result side would exceed
/// max_dim.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   int max_dim = kMaxKronDim);

enum class Subsystem { A, B };

/// Partial trace of a (d1*d2)x(d1*d2) matrix over the factor NOT kept.
/// Trace-preserving: Tr(result) = Tr(m).
ComplexMatrix partial_trace(const ComplexMatrix& m, int d1, int d2,
                            Subsystem keep);
ComplexMatrix partial_trace(const ComplexMatrix& m, const BipartiteDims& dims,
                            Subsystem keep);

struct HermitianEig {
  RealVector values;      ///< ascending
  ComplexMatrix vectors;  ///< eigenvectors as columns, unitary
};

/// Eigendecomposition of a Hermitian matrix. The input must be Hermitian
/// within 1e-9 (max entrywise deviation of m - m†); it is symmetrized before
/// the solve so downstream spectra are stable.
HermitianEig eig_hermitian(const ComplexMatrix& m);

/// Conjugates m by the unitary that permutes tensor factors: output factor
/// slot j carries input factor perm[j]. The product of factor_dims must equal
/// the matrix side.
ComplexMatrix permute_factors(const ComplexMatrix& m,
                              const std::vector<int>& factor_dims,
                              const std::vector<int>& perm);

/// Tr(a*b) in O(n^2) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_ij |m - m†|_ij
double hermiticity_defect(const ComplexMatrix& m);

/// Throws NumericalIntegrity if any entry is NaN or infinite.
void check_finite(const ComplexMatrix& m, const char* context);

}  // namespace concbound
