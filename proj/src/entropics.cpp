#include "entlock/entropics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "index_table.hpp"

namespace entlock {

double BitValue::bits() const {
  if (infinite_) throw Error(ErrorKind::NotAState, "relative entropy is infinite");
  return bits_;
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double spectrum_entropy(const RVector& eigenvalues) {
  double h = 0.0;
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    const double lam = eigenvalues(k);
    if (lam < -kEigenClampTol) throw Error(ErrorKind::NotAState, "eigenvalue " + std::to_string(lam));
    const double x = std::min(lam, 1.0);
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double entropy(const CMatrix& rho) { return spectrum_entropy(hermitian_eigenvalues(rho)); }

double entropy(const DensityOperator& rho) { return entropy(rho.mat()); }

BitValue relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimMismatch, "relative entropy of different dimensions");
  const HermitianEig es = hermitian_eig(sigma.mat());
  // diagonal of rho in sigma's eigenbasis
  const RVector rho_diag = (es.vectors.adjoint() * rho.mat() * es.vectors).diagonal().real();
  double cross = 0.0;
  double outside = 0.0;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    if (es.values(k) > 1e-12) {
      cross += rho_diag(k) * std::log2(es.values(k));
    } else {
      outside += rho_diag(k);
    }
  }
  if (outside > 1e-9) return BitValue::infinity();
  return BitValue(-entropy(rho) - cross);
}

namespace {

void check_disjoint(const DimList& dims, std::span<const int> a, std::span<const int> b, std::span<const int> c = {}) {
  std::vector<int> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  all.insert(all.end(), c.begin(), c.end());
  detail::check_factor_set(dims, all, false);
}

std::vector<int> join(std::span<const int> a, std::span<const int> b) {
  std::vector<int> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

double marginal_entropy(const DensityOperator& state, std::span<const int> keep) {
  if (keep.empty()) return 0.0;
  if (keep.size() == state.dims().size()) return entropy(state.mat());
  return entropy(partial_trace(state.mat(), state.dims(), keep));
}

}  // namespace

double mutual_information(const DensityOperator& state, std::span<const int> part_a, std::span<const int> part_b) {
  check_disjoint(state.dims(), part_a, part_b);
  return marginal_entropy(state, part_a) + marginal_entropy(state, part_b) -
         marginal_entropy(state, join(part_a, part_b));
}

double conditional_mutual_information(const DensityOperator& state, std::span<const int> part_a,
                                      std::span<const int> part_b, std::span<const int> part_e) {
  check_disjoint(state.dims(), part_a, part_b, part_e);
  const auto ae = join(part_a, part_e);
  const auto be = join(part_b, part_e);
  const auto abe = join(join(part_a, part_b), part_e);
  return marginal_entropy(state, ae) + marginal_entropy(state, be) - marginal_entropy(state, part_e) -
         marginal_entropy(state, abe);
}

double conditional_entropy(const DensityOperator& state, std::span<const int> part_e, std::span<const int> part_a) {
  check_disjoint(state.dims(), part_e, part_a);
  return marginal_entropy(state, join(part_e, part_a)) - marginal_entropy(state, part_a);
}

double holevo_chi(const Ensemble& ens) {
  double avg_entropy = 0.0;
  for (const auto& it : ens.items()) {
    if (it.prob > 0.0) avg_entropy += it.prob * entropy(it.state);
  }
  return entropy(ens.average()) - avg_entropy;
}

Ensemble push_forward(const KrausChannel& ch, const Ensemble& ens) {
  std::vector<EnsembleItem> items;
  items.reserve(ens.size());
  for (const auto& it : ens.items()) items.push_back({it.prob, apply(ch, it.state)});
  return Ensemble(std::move(items));
}

DensityOperator choi_state(const KrausChannel& ch) {
  return apply_to_factor(ch, max_entangled(ch.d_in()), 1);
}

double channel_mutual_information(const KrausChannel& ch, int d) {
  if (ch.d_in() != d) throw Error(ErrorKind::DimMismatch, "channel input dimension differs from d");
  return entropy(maximally_mixed(d)) + entropy(apply(ch, maximally_mixed(d))) - entropy(choi_state(ch));
}

double coherent_information(const KrausChannel& ch, int d) {
  if (ch.d_in() != d) throw Error(ErrorKind::DimMismatch, "channel input dimension differs from d");
  return entropy(apply(ch, maximally_mixed(d))) - entropy(choi_state(ch));
}

double pure_marginal_entropy(const CVector& v, const DimList& dims, std::span<const int> keep) {
  if (v.size() != dims.total()) throw Error(ErrorKind::DimMismatch, "vector size does not match dimension list");
  if (keep.empty() || keep.size() == dims.size()) return 0.0;
  const std::vector<int> rest = dims.complement(keep);
  const bool keep_smaller = dims.total(keep) <= dims.total(rest);
  return entropy(pure_marginal(v, dims, keep_smaller ? keep : std::span<const int>(rest)));
}

double entanglement_entropy(const PureState& psi, std::span<const int> cut) {
  detail::check_factor_set(psi.dims(), cut, false);
  return pure_marginal_entropy(psi.vec(), psi.dims(), cut);
}

}  // namespace entlock
