#include "concbound/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace concbound {

void check_dims(const BipartiteDims& dims) {
  if (dims.dim_a < 2 || dims.dim_b < 2) {
    throw ContractViolation("bipartite dims must both be >= 2, got " +
                            std::to_string(dims.dim_a) + "x" +
                            std::to_string(dims.dim_b));
  }
}

void check_finite(const ComplexMatrix& m, const char* context) {
  if (!m.allFinite()) {
    throw NumericalIntegrity(std::string(context) +
                             ": matrix has non-finite entries");
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   int max_dim) {
  const long long rows = static_cast<long long>(a.rows()) * b.rows();
  const long long cols = static_cast<long long>(a.cols()) * b.cols();
  if (rows > max_dim || cols > max_dim) {
    throw SizeError("kron result " + std::to_string(rows) + "x" +
                    std::to_string(cols) + " exceeds max dimension " +
                    std::to_string(max_dim));
  }
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int d1, int d2,
                            Subsystem keep) {
  if (d1 < 1 || d2 < 1) {
    throw ShapeError("partial_trace: factor dimensions must be positive");
  }
  const Eigen::Index side = static_cast<Eigen::Index>(d1) * d2;
  if (m.rows() != side || m.cols() != side) {
    throw ShapeError("partial_trace: matrix side " + std::to_string(m.rows()) +
                     "x" + std::to_string(m.cols()) + " does not match " +
                     std::to_string(d1) + "*" + std::to_string(d2));
  }
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j)
        for (int k = 0; k < d2; ++k)
          out(i, j) += m(static_cast<Eigen::Index>(i) * d2 + k,
                         static_cast<Eigen::Index>(j) * d2 + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (int k = 0; k < d2; ++k)
    for (int l = 0; l < d2; ++l)
      for (int i = 0; i < d1; ++i)
        out(k, l) += m(static_cast<Eigen::Index>(i) * d2 + k,
                       static_cast<Eigen::Index>(i) * d2 + l);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const BipartiteDims& dims,
                            Subsystem keep) {
  check_dims(dims);
  return partial_trace(m, dims.dim_a, dims.dim_b, keep);
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw ShapeError("hermiticity defect requires a square matrix");
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianEig eig_hermitian(const ComplexMatrix& m) {
  constexpr double kHermTol = 1e-9;
  const double defect = hermiticity_defect(m);
  if (defect > kHermTol) {
    throw ContractViolation("eig_hermitian: input deviates from Hermitian by " +
                            std::to_string(defect));
  }
  // Symmetrize to suppress round-off drift before the solve.
  ComplexMatrix sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalIntegrity("eig_hermitian: eigensolver failed to converge");
  }
  HermitianEig out;
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  return out;
}

namespace {

// Composite-index digit permutation for permute_factors.
std::vector<Eigen::Index> build_index_map(const std::vector<int>& factor_dims,
                                          const std::vector<int>& perm) {
  const int n = static_cast<int>(factor_dims.size());
  Eigen::Index side = 1;
  for (int d : factor_dims) side *= d;

  std::vector<Eigen::Index> in_stride(n), out_stride(n);
  Eigen::Index s = 1;
  for (int f = n - 1; f >= 0; --f) {
    in_stride[f] = s;
    s *= factor_dims[f];
  }
  s = 1;
  for (int slot = n - 1; slot >= 0; --slot) {
    out_stride[slot] = s;
    s *= factor_dims[perm[slot]];
  }

  std::vector<Eigen::Index> map(side);
  std::vector<int> digits(n);
  for (Eigen::Index idx = 0; idx < side; ++idx) {
    Eigen::Index rem = idx;
    for (int f = 0; f < n; ++f) {
      digits[f] = static_cast<int>(rem / in_stride[f]);
      rem %= in_stride[f];
    }
    Eigen::Index out = 0;
    for (int slot = 0; slot < n; ++slot) out += digits[perm[slot]] * out_stride[slot];
    map[idx] = out;
  }
  return map;
}

}  // namespace

ComplexMatrix permute_factors(const ComplexMatrix& m,
                              const std::vector<int>& factor_dims,
                              const std::vector<int>& perm) {
  if (perm.size() != factor_dims.size()) {
    throw ContractViolation("permute_factors: perm length " +
                            std::to_string(perm.size()) +
                            " does not match factor count " +
                            std::to_string(factor_dims.size()));
  }
  std::vector<bool> seen(perm.size(), false);
  for (int p : perm) {
    if (p < 0 || p >= static_cast<int>(perm.size()) || seen[p]) {
      throw ContractViolation("permute_factors: not a valid permutation");
    }
    seen[p] = true;
  }
  long long side = 1;
  for (int d : factor_dims) {
    if (d < 1) throw ContractViolation("permute_factors: factor dims must be positive");
    side *= d;
  }
  if (m.rows() != side || m.cols() != side) {
    throw ShapeError("permute_factors: matrix side " + std::to_string(m.rows()) +
                     " does not match factor product " + std::to_string(side));
  }

  const auto map = build_index_map(factor_dims, perm);
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(map[r], map[c]) = m(r, c);
  return out;
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw ShapeError("trace_of_product: incompatible shapes");
  }
  Complex sum = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) sum += a(i, j) * b(j, i);
  return sum;
}

}  // namespace concbound
