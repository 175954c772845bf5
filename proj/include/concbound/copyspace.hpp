#pragma once

#include <utility>

#include "concbound/linalg.hpp"

namespace concbound {

/// Observables on the two-fold copy space. P labels name joint parity
/// projectors: first sign is the exchange parity of the two A copies, second
/// of the two B copies (m = antisymmetric, p = symmetric).
enum class ObservableLabel { A, V1, V2, Pmm, Pmp, Ppm, Ppp };

const char* to_string(ObservableLabel label);

/// Hermitian operator on the four-factor copy space, factors ordered
/// (A1, B1, A2, B2) so that it traces directly against kron(rho, rho).
struct TwoCopyObservable {
  BipartiteDims dims;
  ComplexMatrix matrix;  ///< side (dim_a*dim_b)^2
  ObservableLabel label;
};

/// Exchange operator on d x d two-copy space: S|i⟩|j⟩ = |j⟩|i⟩.
ComplexMatrix swap_operator(int d);

/// (P-, P+) with P± = (I ± S)/2; ranks d(d-1)/2 and d(d+1)/2.
std::pair<ComplexMatrix, ComplexMatrix> parity_projectors(int d);

/// Cached observable for the given dims and label. Built on first use,
/// immutable afterwards; the returned reference stays valid for the process
/// lifetime and is safe to share across threads.
const TwoCopyObservable& copy_observable(const BipartiteDims& dims,
                                         ObservableLabel label);

}  // namespace concbound
