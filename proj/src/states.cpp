#include "entlock/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace entlock {

namespace {

constexpr double kStateTol = 1e-10;

void check_square(const CMatrix& mat, const DimList& dims) {
  if (mat.rows() != mat.cols() || mat.rows() != dims.total()) {
    throw Error(ErrorKind::DimMismatch, "operator size does not match dimension list");
  }
}

void check_hermitian_unit_trace(const CMatrix& mat) {
  if (!is_hermitian(mat)) throw Error(ErrorKind::NotHermitian, "density operator is not Hermitian");
  const double tr = mat.trace().real();
  if (std::abs(tr - 1.0) > kStateTol) {
    throw Error(ErrorKind::NotAState, "trace " + std::to_string(tr) + " differs from 1");
  }
}

}  // namespace

DensityOperator::DensityOperator(CMatrix mat, DimList dims) : mat_(std::move(mat)), dims_(std::move(dims)) {
  check_square(mat_, dims_);
  check_hermitian_unit_trace(mat_);
  const double lo = hermitian_eigenvalues(mat_).minCoeff();
  if (lo < -kStateTol) throw Error(ErrorKind::NotAState, "negative eigenvalue " + std::to_string(lo));
}

DensityOperator::DensityOperator(CMatrix mat, DimList dims, Trusted)
    : mat_(std::move(mat)), dims_(std::move(dims)) {
  check_square(mat_, dims_);
  check_hermitian_unit_trace(mat_);
}

DensityOperator DensityOperator::trusted(CMatrix mat, DimList dims) {
  return DensityOperator(std::move(mat), std::move(dims), Trusted{});
}

DensityOperator DensityOperator::reduce(std::span<const int> keep) const {
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  return trusted(partial_trace(mat_, dims_, kept), dims_.select(kept));
}

DensityOperator DensityOperator::regroup(DimList dims) const {
  if (dims.total() != dims_.total()) throw Error(ErrorKind::DimMismatch, "regroup changes total dimension");
  return DensityOperator(mat_, std::move(dims), Trusted{});
}

PureState::PureState(CVector vec, DimList dims, std::optional<int> purifying_factor)
    : vec_(std::move(vec)), dims_(std::move(dims)), purifying_factor_(purifying_factor) {
  if (vec_.size() != dims_.total()) throw Error(ErrorKind::DimMismatch, "vector size does not match dimension list");
  if (std::abs(vec_.norm() - 1.0) > kStateTol) throw Error(ErrorKind::NotAState, "state vector is not normalized");
  if (purifying_factor_ && (*purifying_factor_ < 0 || *purifying_factor_ >= static_cast<int>(dims_.size()))) {
    throw Error(ErrorKind::DimMismatch, "purifying factor out of range");
  }
}

DensityOperator PureState::density() const {
  return DensityOperator::trusted(vec_ * vec_.adjoint(), dims_);
}

DensityOperator PureState::reduce(std::span<const int> keep) const {
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  return DensityOperator::trusted(pure_marginal(vec_, dims_, kept), dims_.select(kept));
}

Ensemble::Ensemble(std::vector<EnsembleItem> items) : items_(std::move(items)) {
  if (items_.empty()) throw Error(ErrorKind::BadShape, "ensemble is empty");
  double total = 0.0;
  for (const auto& it : items_) {
    if (it.prob < 0.0) throw Error(ErrorKind::NotAState, "negative ensemble probability");
    if (it.state.dims() != items_.front().state.dims()) {
      throw Error(ErrorKind::DimMismatch, "ensemble members live on different spaces");
    }
    total += it.prob;
  }
  if (std::abs(total - 1.0) > kStateTol) throw Error(ErrorKind::NotAState, "ensemble probabilities do not sum to 1");
}

DensityOperator Ensemble::average() const {
  CMatrix avg = CMatrix::Zero(dim(), dim());
  for (const auto& it : items_) avg += it.prob * it.state.mat();
  return DensityOperator::trusted(avg, items_.front().state.dims());
}

Ensemble Ensemble::mix(double p, const Ensemble& a, const Ensemble& b) {
  std::vector<EnsembleItem> items;
  for (const auto& it : a.items()) items.push_back({p * it.prob, it.state});
  for (const auto& it : b.items()) items.push_back({(1.0 - p) * it.prob, it.state});
  return Ensemble(std::move(items));
}

AbelianGroup AbelianGroup::zd(int d) {
  if (d < 1) throw Error(ErrorKind::BadShape, "group order must be >= 1");
  return AbelianGroup(Kind::Zd, d, 0);
}

AbelianGroup AbelianGroup::z2l(int l) {
  if (l < 1 || l > 20) throw Error(ErrorKind::BadShape, "Z_2^l needs 1 <= l <= 20");
  return AbelianGroup(Kind::Z2l, 1 << l, l);
}

CMatrix AbelianGroup::fourier() const {
  return kind_ == Kind::Zd ? fourier_unitary(d_) : hadamard_tensor(l_);
}

namespace {

CMatrix bit_power(const CMatrix& single, int bits, int l) {
  std::vector<CMatrix> factors;
  for (int k = 0; k < l; ++k) {
    const bool on = (bits >> (l - 1 - k)) & 1;
    factors.push_back(on ? single : CMatrix(CMatrix::Identity(2, 2)));
  }
  return kron_all(factors);
}

CMatrix matrix_power(const CMatrix& m, int n) {
  CMatrix out = CMatrix::Identity(m.rows(), m.cols());
  for (int k = 0; k < n; ++k) out = out * m;
  return out;
}

}  // namespace

CMatrix AbelianGroup::shift(int a) const {
  if (a < 0 || a >= d_) throw Error(ErrorKind::BadShape, "group element out of range");
  return kind_ == Kind::Zd ? matrix_power(weyl_x(d_), a) : bit_power(weyl_x(2), a, l_);
}

CMatrix AbelianGroup::phase(int b) const {
  if (b < 0 || b >= d_) throw Error(ErrorKind::BadShape, "group element out of range");
  return kind_ == Kind::Zd ? matrix_power(weyl_z(d_), b) : bit_power(weyl_z(2), b, l_);
}

DensityOperator maximally_mixed(int d) {
  if (d < 1) throw Error(ErrorKind::BadShape, "dimension must be >= 1");
  return DensityOperator::trusted(CMatrix::Identity(d, d) / static_cast<double>(d), DimList{d});
}

PureState max_entangled(int d) {
  if (d < 1) throw Error(ErrorKind::BadShape, "dimension must be >= 1");
  CVector v = CVector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState(v, DimList{d, d});
}

CMatrix fourier_unitary(int d) {
  if (d < 1) throw Error(ErrorKind::BadShape, "dimension must be >= 1");
  CMatrix u(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      // reduce jk mod d first so large products do not lose phase accuracy
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % d) / d;
      u(j, k) = std::polar(norm, angle);
    }
  }
  return u;
}

CMatrix hadamard_tensor(int l) {
  if (l < 1) throw Error(ErrorKind::BadShape, "l must be >= 1");
  CMatrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  CMatrix out = h;
  for (int k = 1; k < l; ++k) out = kron(out, h);
  return out;
}

CMatrix weyl_x(int d) {
  if (d < 1) throw Error(ErrorKind::BadShape, "dimension must be >= 1");
  CMatrix x = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) x((i + 1) % d, i) = 1.0;
  return x;
}

CMatrix weyl_z(int d) {
  if (d < 1) throw Error(ErrorKind::BadShape, "dimension must be >= 1");
  CMatrix z = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) z(i, i) = std::polar(1.0, 2.0 * std::numbers::pi * i / d);
  return z;
}

std::pair<Ensemble, Ensemble> basis_ensembles(const CMatrix& u) {
  if (u.rows() != u.cols()) throw Error(ErrorKind::BadShape, "basis change must be square");
  if (max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())) > 1e-10) {
    throw Error(ErrorKind::NotIsometry, "basis change is not unitary");
  }
  const int d = static_cast<int>(u.rows());
  std::vector<EnsembleItem> e0, e1;
  for (int i = 0; i < d; ++i) {
    CMatrix p0 = CMatrix::Zero(d, d);
    p0(i, i) = 1.0;
    e0.push_back({1.0 / d, DensityOperator::trusted(p0, DimList{d})});
    e1.push_back({1.0 / d, DensityOperator::trusted(u.col(i) * u.col(i).adjoint(), DimList{d})});
  }
  return {Ensemble(std::move(e0)), Ensemble(std::move(e1))};
}

PureState flower_purification_general(int d, std::span<const CMatrix> unitaries) {
  if (d < 2) throw Error(ErrorKind::BadShape, "flower states need d >= 2");
  const int m = static_cast<int>(unitaries.size());
  if (m < 1) throw Error(ErrorKind::BadShape, "need at least one unitary");
  for (const CMatrix& v : unitaries) {
    if (v.rows() != d || v.cols() != d) throw Error(ErrorKind::BadShape, "unitary has wrong size");
    if (max_abs(v.adjoint() * v - CMatrix::Identity(d, d)) > 1e-10) {
      throw Error(ErrorKind::BadShape, "V_k is not unitary");
    }
  }
  const CMatrix u1 = fourier_unitary(d);
  const DimList dims{d, 2 * m, d, 2 * m, d};
  CVector psi = CVector::Zero(dims.total());
  const double amp = 1.0 / std::sqrt(2.0 * d * m);
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < m; ++k) {
      const CMatrix vu = j == 0 ? unitaries[k] : CMatrix(unitaries[k] * u1);
      const int jk = j * m + k;
      for (int i = 0; i < d; ++i) {
        // |i>_A |jk>_A' |i>_B |jk>_B' (V_k U_j |i>)_C
        const Eigen::Index base = ((((static_cast<Eigen::Index>(i) * 2 * m + jk) * d + i) * 2 * m + jk) * d);
        psi.segment(base, d) += amp * vu.col(i);
      }
    }
  }
  return PureState(psi, dims, 4);
}

PureState flower_purification(int d) {
  const std::vector<CMatrix> id{CMatrix::Identity(d, d)};
  return flower_purification_general(d, id);
}

std::pair<CMatrix, CMatrix> sym_antisym_projectors(int d) {
  if (d < 2) throw Error(ErrorKind::BadShape, "need d >= 2");
  const CMatrix id = CMatrix::Identity(d * d, d * d);
  const CMatrix f = swap_operator(d);
  return {(id + f) / 2.0, (id - f) / 2.0};
}

DensityOperator omega_state(int d) {
  const auto [psym, panti] = sym_antisym_projectors(d);
  const double dd = static_cast<double>(d);
  CMatrix flag0 = CMatrix::Zero(2, 2), flag1 = CMatrix::Zero(2, 2);
  flag0(0, 0) = 1.0;
  flag1(1, 1) = 1.0;
  const CMatrix mat = ((dd + 1) / (2 * dd)) * kron(flag0, psym * (2.0 / (dd * (dd + 1)))) +
                      ((dd - 1) / (2 * dd)) * kron(flag1, panti * (2.0 / (dd * (dd - 1))));
  return DensityOperator(mat, DimList{2, d, d});
}

DensityOperator random_supported_state(const CMatrix& projector, int rank, Rng& rng) {
  if (!is_hermitian(projector) || max_abs(projector * projector - projector) > 1e-10) {
    throw Error(ErrorKind::BadShape, "not an orthogonal projector");
  }
  const HermitianEig eig = hermitian_eig(projector);
  std::vector<Eigen::Index> range;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > 0.5) range.push_back(k);
  }
  const int prank = static_cast<int>(range.size());
  if (rank < 1 || rank > prank) {
    throw Error(ErrorKind::RankTooLarge, "rank " + std::to_string(rank) + " not in [1, " + std::to_string(prank) + "]");
  }
  CMatrix basis(projector.rows(), prank);
  for (int k = 0; k < prank; ++k) basis.col(k) = eig.vectors.col(range[k]);

  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(rank);
  double wsum = 0.0;
  for (double& x : w) wsum += (x = expo(rng));
  CMatrix rho = CMatrix::Zero(projector.rows(), projector.cols());
  for (int r = 0; r < rank; ++r) {
    CVector c = complex_gaussian(prank, 1, rng).col(0);
    CVector v = basis * c.normalized();
    rho += (w[r] / wsum) * v * v.adjoint();
  }
  rho = (rho + rho.adjoint()) * 0.5;
  rho /= rho.trace().real();
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(projector.rows()))));
  DimList dims = (static_cast<Eigen::Index>(n) * n == projector.rows()) ? DimList{n, n}
                                                                         : DimList{static_cast<int>(projector.rows())};
  return DensityOperator(rho, dims);
}

PureState purify(const DensityOperator& rho) {
  const HermitianEig eig = hermitian_eig(rho.mat());
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = eig.values.size() - 1; k >= 0; --k) {
    if (eig.values(k) > 1e-12) support.push_back(k);
  }
  const int r = static_cast<int>(support.size());
  const Eigen::Index n = rho.dim();
  CVector psi = CVector::Zero(n * r);
  for (int c = 0; c < r; ++c) {
    const Eigen::Index k = support[c];
    const double amp = std::sqrt(eig.values(k));
    for (Eigen::Index i = 0; i < n; ++i) psi(i * r + c) = amp * eig.vectors(i, k);
  }
  psi.normalize();
  const DimList dims = rho.dims() + DimList{r};
  return PureState(psi, dims, static_cast<int>(dims.size()) - 1);
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator::trusted(kron(a.mat(), b.mat()), a.dims() + b.dims());
}

PureState tensor(const PureState& a, const PureState& b) {
  return PureState(kron(a.vec(), b.vec()), a.dims() + b.dims());
}

PureState random_pure_state(const DimList& dims, Rng& rng) {
  CVector v = complex_gaussian(dims.total(), 1, rng).col(0);
  return PureState(v.normalized(), dims);
}

DensityOperator random_density(const DimList& dims, Rng& rng) {
  const CMatrix g = complex_gaussian(dims.total(), dims.total(), rng);
  CMatrix rho = g * g.adjoint();
  rho = (rho + rho.adjoint()) * 0.5;
  rho /= rho.trace().real();
  return DensityOperator::trusted(rho, dims);
}

}  // namespace entlock
