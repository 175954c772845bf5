#include "concbound/copyspace.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace concbound {

const char* to_string(ObservableLabel label) {
  switch (label) {
    case ObservableLabel::A: return "A";
    case ObservableLabel::V1: return "V1";
    case ObservableLabel::V2: return "V2";
    case ObservableLabel::Pmm: return "P(-,-)";
    case ObservableLabel::Pmp: return "P(-,+)";
    case ObservableLabel::Ppm: return "P(+,-)";
    case ObservableLabel::Ppp: return "P(+,+)";
  }
  return "?";
}

ComplexMatrix swap_operator(int d) {
  if (d < 1) throw ContractViolation("swap_operator: d must be >= 1");
  const Eigen::Index side = static_cast<Eigen::Index>(d) * d;
  ComplexMatrix s = ComplexMatrix::Zero(side, side);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      s(static_cast<Eigen::Index>(j) * d + i,
        static_cast<Eigen::Index>(i) * d + j) = 1.0;
  return s;
}

std::pair<ComplexMatrix, ComplexMatrix> parity_projectors(int d) {
  const ComplexMatrix s = swap_operator(d);
  const Eigen::Index side = s.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(side, side);
  return {(id - s) / 2.0, (id + s) / 2.0};
}

namespace {

ComplexMatrix build_observable(const BipartiteDims& dims,
                               ObservableLabel label) {
  const auto [pm_a, pp_a] = parity_projectors(dims.dim_a);
  const auto [pm_b, pp_b] = parity_projectors(dims.dim_b);

  ComplexMatrix x, y;
  double scale = 1.0;
  switch (label) {
    case ObservableLabel::A:
      x = pm_a; y = pm_b; scale = 4.0; break;
    case ObservableLabel::V1:
      x = pm_a - pp_a; y = pm_b; scale = 4.0; break;
    case ObservableLabel::V2:
      x = pm_a; y = pm_b - pp_b; scale = 4.0; break;
    case ObservableLabel::Pmm: x = pm_a; y = pm_b; break;
    case ObservableLabel::Pmp: x = pm_a; y = pp_b; break;
    case ObservableLabel::Ppm: x = pp_a; y = pm_b; break;
    case ObservableLabel::Ppp: x = pp_a; y = pp_b; break;
  }

  // kron(x, y) lives on factor ordering (A1, A2, B1, B2); conjugate into the
  // canonical (A1, B1, A2, B2) ordering of kron(rho, rho).
  ComplexMatrix raw = scale * kron(x, y);
  const std::vector<int> factor_dims = {dims.dim_a, dims.dim_a, dims.dim_b,
                                        dims.dim_b};
  const std::vector<int> perm = {0, 2, 1, 3};
  return permute_factors(raw, factor_dims, perm);
}

}  // namespace

const TwoCopyObservable& copy_observable(const BipartiteDims& dims,
                                         ObservableLabel label) {
  check_dims(dims);
  using Key = std::tuple<int, int, ObservableLabel>;
  static std::mutex mutex;
  static std::map<Key, std::unique_ptr<const TwoCopyObservable>> cache;

  const Key key{dims.dim_a, dims.dim_b, label};
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto obs = std::make_unique<TwoCopyObservable>(
        TwoCopyObservable{dims, build_observable(dims, label), label});
    it = cache.emplace(key, std::move(obs)).first;
  }
  return *it->second;
}

}  // namespace concbound
