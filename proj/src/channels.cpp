#include "entlock/channels.hpp"

#include <numeric>
#include <string>

namespace entlock {

KrausChannel::KrausChannel(std::vector<CMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error(ErrorKind::NotCptp, "empty Kraus set");
  d_out_ = static_cast<int>(kraus_.front().rows());
  d_in_ = static_cast<int>(kraus_.front().cols());
  for (const CMatrix& k : kraus_) {
    if (k.rows() != d_out_ || k.cols() != d_in_) throw Error(ErrorKind::BadShape, "Kraus operators differ in shape");
  }
  const double err = completeness_error();
  if (!(err <= kKrausTol)) {
    throw Error(ErrorKind::NotCptp, "Kraus completeness error " + std::to_string(err));
  }
}

double KrausChannel::completeness_error() const {
  CMatrix s = CMatrix::Zero(d_in_, d_in_);
  for (const CMatrix& k : kraus_) s += k.adjoint() * k;
  return max_abs(s - CMatrix::Identity(d_in_, d_in_));
}

namespace {

CMatrix hermitize(const CMatrix& m) { return (m + m.adjoint()) * 0.5; }

// sum_k (I_R (x) K) rho (I_R (x) K)^dag for rho on (R, d_in).
CMatrix apply_last_factor(const KrausChannel& ch, const CMatrix& rho, Eigen::Index r) {
  const Eigen::Index din = ch.d_in(), dout = ch.d_out();
  CMatrix out = CMatrix::Zero(r * dout, r * dout);
  CMatrix left(r * dout, r * din);
  for (const CMatrix& k : ch.kraus()) {
    for (Eigen::Index a = 0; a < r; ++a) {
      left.middleRows(a * dout, dout).noalias() = k * rho.middleRows(a * din, din);
    }
    const CMatrix kd = k.adjoint();
    for (Eigen::Index b = 0; b < r; ++b) {
      out.middleCols(b * dout, dout).noalias() += left.middleCols(b * din, din) * kd;
    }
  }
  return hermitize(out);
}

struct FactorLayout {
  std::vector<int> to_last;   // permutation moving `factor` to the end
  std::vector<int> from_last;  // permutation restoring the original order
  Eigen::Index rest = 1;
};

FactorLayout layout_for(const DimList& dims, int factor, int d_in) {
  if (factor < 0 || factor >= static_cast<int>(dims.size())) {
    throw Error(ErrorKind::DimMismatch, "factor index out of range");
  }
  if (dims[factor] != d_in) {
    throw Error(ErrorKind::DimMismatch, "factor dimension " + std::to_string(dims[factor]) +
                                            " does not match channel input " + std::to_string(d_in));
  }
  FactorLayout lay;
  const int n = static_cast<int>(dims.size());
  for (int i = 0; i < n; ++i) {
    if (i != factor) lay.to_last.push_back(i);
  }
  lay.to_last.push_back(factor);
  lay.from_last = inverse_permutation(lay.to_last);
  lay.rest = dims.total() / d_in;
  return lay;
}

}  // namespace

DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho) {
  if (rho.dim() != ch.d_in()) throw Error(ErrorKind::DimMismatch, "state dimension does not match channel input");
  return DensityOperator::trusted(apply_last_factor(ch, rho.mat(), 1), DimList{ch.d_out()});
}

DensityOperator apply_to_factor(const KrausChannel& ch, const DensityOperator& rho, int factor) {
  const FactorLayout lay = layout_for(rho.dims(), factor, ch.d_in());
  const DimList moved = rho.dims().select(lay.to_last);
  const CMatrix permuted = permute_systems(rho.mat(), rho.dims(), lay.to_last);
  const CMatrix out = apply_last_factor(ch, permuted, lay.rest);
  const DimList out_moved = moved.with(moved.size() - 1, ch.d_out());
  return DensityOperator::trusted(permute_systems(out, out_moved, lay.from_last),
                                  rho.dims().with(factor, ch.d_out()));
}

DensityOperator apply_to_factor(const KrausChannel& ch, const PureState& psi, int factor) {
  const FactorLayout lay = layout_for(psi.dims(), factor, ch.d_in());
  const DimList moved = psi.dims().select(lay.to_last);
  const CVector permuted = permute_systems(psi.vec(), psi.dims(), lay.to_last);
  // row-major (rest x d_in) view of the permuted vector
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> amp(
      permuted.data(), lay.rest, ch.d_in());
  const Eigen::Index n = lay.rest * ch.d_out();
  CMatrix out = CMatrix::Zero(n, n);
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> branch(lay.rest, ch.d_out());
  for (const CMatrix& k : ch.kraus()) {
    branch.noalias() = amp * k.transpose();
    Eigen::Map<const CVector> v(branch.data(), n);
    out.noalias() += v * v.adjoint();
  }
  const DimList out_moved = moved.with(moved.size() - 1, ch.d_out());
  return DensityOperator::trusted(permute_systems(hermitize(out), out_moved, lay.from_last),
                                  psi.dims().with(factor, ch.d_out()));
}

KrausChannel identity_channel(int d) { return KrausChannel({CMatrix::Identity(d, d)}); }

KrausChannel completely_depolarizing(int d) {
  std::vector<CMatrix> ks;
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      CMatrix k = CMatrix::Zero(d, d);
      k(i, j) = s;
      ks.push_back(k);
    }
  }
  return KrausChannel(std::move(ks));
}

KrausChannel replacement_channel(int d_in, int d_out) {
  std::vector<CMatrix> ks;
  for (int j = 0; j < d_in; ++j) {
    CMatrix k = CMatrix::Zero(d_out, d_in);
    k(0, j) = 1.0;
    ks.push_back(k);
  }
  return KrausChannel(std::move(ks));
}

KrausChannel unitary_channel(const CMatrix& u) { return KrausChannel({u}); }

KrausChannel dephasing_channel(const CMatrix& basis) {
  if (basis.rows() != basis.cols() ||
      max_abs(basis.adjoint() * basis - CMatrix::Identity(basis.rows(), basis.cols())) > 1e-10) {
    throw Error(ErrorKind::NotIsometry, "dephasing basis is not unitary");
  }
  std::vector<CMatrix> ks;
  for (Eigen::Index i = 0; i < basis.cols(); ++i) ks.push_back(basis.col(i) * basis.col(i).adjoint());
  return KrausChannel(std::move(ks));
}

KrausChannel measurement_channel(std::span<const CMatrix> effects) {
  const int n = static_cast<int>(effects.size());
  std::vector<CMatrix> ks;
  for (int y = 0; y < n; ++y) {
    const HermitianEig eig = hermitian_eig(effects[y]);
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
      const double lam = eig.values(k);
      if (lam <= 1e-14) continue;
      CMatrix kr = CMatrix::Zero(n, effects[y].cols());
      kr.row(y) = std::sqrt(lam) * eig.vectors.col(k).adjoint();
      ks.push_back(kr);
    }
  }
  return KrausChannel(std::move(ks));
}

KrausChannel channel_from_isometry(const CMatrix& v, int d_out, int d_env) {
  if (v.rows() != static_cast<Eigen::Index>(d_out) * d_env) {
    throw Error(ErrorKind::BadShape, "isometry rows must equal d_out * d_env");
  }
  const double err = max_abs(v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols()));
  if (err > 1e-9) throw Error(ErrorKind::NotIsometry, "V^dag V deviates from I by " + std::to_string(err));
  std::vector<CMatrix> ks;
  for (int e = 0; e < d_env; ++e) {
    CMatrix k(d_out, v.cols());
    for (int o = 0; o < d_out; ++o) k.row(o) = v.row(static_cast<Eigen::Index>(o) * d_env + e);
    ks.push_back(k);
  }
  return KrausChannel(std::move(ks));
}

CMatrix stinespring_isometry(const KrausChannel& ch) {
  const Eigen::Index ne = static_cast<Eigen::Index>(ch.kraus().size());
  CMatrix v(ch.d_out() * ne, ch.d_in());
  for (Eigen::Index e = 0; e < ne; ++e) {
    for (Eigen::Index o = 0; o < ch.d_out(); ++o) v.row(o * ne + e) = ch.kraus()[e].row(o);
  }
  return v;
}

KrausChannel random_channel(int d_in, int d_out, int d_env, Rng& rng) {
  if (d_in < 1 || d_out < 1 || d_env < 1 || static_cast<long>(d_out) * d_env < d_in) {
    throw Error(ErrorKind::BadShape, "random_channel requires d_out * d_env >= d_in");
  }
  return channel_from_isometry(haar_isometry(d_in, d_out * d_env, rng), d_out, d_env);
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (second.d_in() != first.d_out()) throw Error(ErrorKind::DimMismatch, "channels do not compose");
  std::vector<CMatrix> ks;
  for (const CMatrix& b : second.kraus()) {
    for (const CMatrix& a : first.kraus()) ks.push_back(b * a);
  }
  return KrausChannel(std::move(ks));
}

DensityOperator weyl_twist(const DensityOperator& rho, int a, int b, const AbelianGroup& group) {
  if (rho.dims().size() == 0 || rho.dims()[0] != group.order()) {
    throw Error(ErrorKind::DimMismatch, "first factor does not match the Weyl operators");
  }
  const CMatrix u = group.shift(a) * group.phase(b);
  return apply_to_factor(unitary_channel(u), rho, 0);
}

}  // namespace entlock
