#include "entlock/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "index_table.hpp"

namespace entlock {

DimList::DimList(std::initializer_list<int> dims) : DimList(std::vector<int>(dims)) {}

DimList::DimList(std::vector<int> dims) : dims_(std::move(dims)) {
  for (int d : dims_) {
    if (d < 1) throw Error(ErrorKind::BadShape, "factor dimension must be >= 1");
  }
}

Eigen::Index DimList::total() const noexcept {
  Eigen::Index n = 1;
  for (int d : dims_) n *= d;
  return n;
}

Eigen::Index DimList::total(std::span<const int> factors) const {
  Eigen::Index n = 1;
  for (int f : factors) {
    if (f < 0 || static_cast<std::size_t>(f) >= dims_.size()) {
      throw Error(ErrorKind::DimMismatch, "factor index " + std::to_string(f) + " out of range");
    }
    n *= dims_[f];
  }
  return n;
}

DimList DimList::select(std::span<const int> factors) const {
  std::vector<int> out;
  out.reserve(factors.size());
  for (int f : factors) {
    if (f < 0 || static_cast<std::size_t>(f) >= dims_.size()) {
      throw Error(ErrorKind::DimMismatch, "factor index " + std::to_string(f) + " out of range");
    }
    out.push_back(dims_[f]);
  }
  return DimList(std::move(out));
}

std::vector<int> DimList::complement(std::span<const int> factors) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(dims_.size()); ++i) {
    if (std::find(factors.begin(), factors.end(), i) == factors.end()) out.push_back(i);
  }
  return out;
}

DimList DimList::with(std::size_t i, int d) const {
  std::vector<int> out = dims_;
  out.at(i) = d;
  return DimList(std::move(out));
}

DimList DimList::operator+(const DimList& other) const {
  std::vector<int> out = dims_;
  out.insert(out.end(), other.dims_.begin(), other.dims_.end());
  return DimList(std::move(out));
}

namespace detail {

void check_factor_set(const DimList& dims, std::span<const int> factors, bool require_permutation) {
  std::vector<bool> seen(dims.size(), false);
  for (int f : factors) {
    if (f < 0 || static_cast<std::size_t>(f) >= dims.size()) {
      throw Error(ErrorKind::DimMismatch, "factor index " + std::to_string(f) + " out of range");
    }
    if (seen[f]) throw Error(ErrorKind::DimMismatch, "repeated factor index " + std::to_string(f));
    seen[f] = true;
  }
  if (require_permutation && factors.size() != dims.size()) {
    throw Error(ErrorKind::DimMismatch, "permutation must list every factor exactly once");
  }
}

std::vector<Eigen::Index> index_table(const DimList& dims, std::span<const int> order) {
  const std::size_t n = order.size();
  std::vector<Eigen::Index> stride(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  Eigen::Index total = 1;
  for (int f : order) total *= dims[f];
  std::vector<Eigen::Index> table(static_cast<std::size_t>(total));
  std::vector<int> digit(n, 0);
  Eigen::Index orig = 0;
  for (Eigen::Index p = 0; p < total; ++p) {
    table[static_cast<std::size_t>(p)] = orig;
    // odometer increment over `order`, last listed factor fastest
    for (int k = static_cast<int>(n) - 1; k >= 0; --k) {
      const int f = order[k];
      ++digit[k];
      orig += stride[f];
      if (digit[k] < dims[f]) break;
      orig -= stride[f] * dims[f];
      digit[k] = 0;
    }
  }
  return table;
}

}  // namespace detail

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMatrix kron_all(std::span<const CMatrix> factors) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (const CMatrix& f : factors) out = kron(out, f);
  return out;
}

bool is_hermitian(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

namespace {

CMatrix checked_symmetrize(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::BadShape, "matrix is not square");
  const double asym = max_abs(m - m.adjoint());
  if (!(asym <= kHermitianTol)) {
    throw Error(ErrorKind::NotHermitian, "asymmetry " + std::to_string(asym) + " exceeds tolerance");
  }
  return (m + m.adjoint()) * 0.5;
}

}  // namespace

HermitianEig hermitian_eig(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(checked_symmetrize(m));
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NotHermitian, "eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(checked_symmetrize(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NotHermitian, "eigensolver failed");
  return solver.eigenvalues();
}

CMatrix partial_trace(const CMatrix& rho, const DimList& dims, std::span<const int> keep) {
  if (rho.rows() != dims.total() || rho.cols() != dims.total()) {
    throw Error(ErrorKind::DimMismatch, "matrix size does not match dimension list");
  }
  if (keep.empty()) throw Error(ErrorKind::DimMismatch, "keep set must be nonempty");
  detail::check_factor_set(dims, keep, false);
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  std::vector<int> order = kept;
  for (int f : dims.complement(kept)) order.push_back(f);

  const auto table = detail::index_table(dims, order);
  const Eigen::Index dk = dims.total(kept);
  const Eigen::Index dr = dims.total() / dk;
  CMatrix out = CMatrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      Complex s = 0.0;
      for (Eigen::Index r = 0; r < dr; ++r) {
        s += rho(table[a * dr + r], table[b * dr + r]);
      }
      out(a, b) = s;
    }
  }
  return out;
}

std::vector<int> inverse_permutation(std::span<const int> perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inv.at(perm[k]) = static_cast<int>(k);
  return inv;
}

CVector permute_systems(const CVector& v, const DimList& dims, std::span<const int> perm) {
  if (v.size() != dims.total()) throw Error(ErrorKind::DimMismatch, "vector size does not match dimension list");
  detail::check_factor_set(dims, perm, true);
  const auto table = detail::index_table(dims, perm);
  CVector out(v.size());
  for (Eigen::Index p = 0; p < v.size(); ++p) out(p) = v(table[p]);
  return out;
}

CMatrix permute_systems(const CMatrix& m, const DimList& dims, std::span<const int> perm) {
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw Error(ErrorKind::DimMismatch, "matrix size does not match dimension list");
  }
  detail::check_factor_set(dims, perm, true);
  const auto table = detail::index_table(dims, perm);
  CMatrix out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = m(table[i], table[j]);
  }
  return out;
}

CMatrix pure_marginal(const CVector& v, const DimList& dims, std::span<const int> keep) {
  if (v.size() != dims.total()) throw Error(ErrorKind::DimMismatch, "vector size does not match dimension list");
  detail::check_factor_set(dims, keep, false);
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  std::vector<int> order = kept;
  for (int f : dims.complement(kept)) order.push_back(f);
  const auto table = detail::index_table(dims, order);
  const Eigen::Index dk = dims.total(kept);
  const Eigen::Index dr = dims.total() / dk;
  CMatrix m(dk, dr);
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index r = 0; r < dr; ++r) m(a, r) = v(table[a * dr + r]);
  }
  return m * m.adjoint();
}

CMatrix swap_operator(int d) {
  CMatrix f = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) f(j * d + i, i * d + j) = 1.0;
  }
  return f;
}

CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix g(rows, cols);
  // fill row-major so the draw order does not depend on storage order
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re * s, im * s);
    }
  }
  return g;
}

namespace {

// Q factor of a thin QR, with columns rephased so that diag(R) > 0.
CMatrix phase_corrected_q(const CMatrix& g) {
  Eigen::HouseholderQR<CMatrix> qr(g);
  const Eigen::Index n = g.cols();
  CMatrix q = qr.householderQ() * CMatrix::Identity(g.rows(), n);
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

}  // namespace

CMatrix haar_unitary(int d, Rng& rng) {
  if (d < 1) throw Error(ErrorKind::BadShape, "dimension must be >= 1");
  return phase_corrected_q(complex_gaussian(d, d, rng));
}

CMatrix haar_isometry(int d_in, int d_out, Rng& rng) {
  if (d_in < 1 || d_out < d_in) throw Error(ErrorKind::BadShape, "haar_isometry requires 1 <= d_in <= d_out");
  return phase_corrected_q(complex_gaussian(d_out, d_in, rng));
}

CMatrix polar_isometry(const CMatrix& y) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(y.adjoint() * y);
  const RVector& s = solver.eigenvalues();
  if (s.minCoeff() <= 0.0) throw Error(ErrorKind::NotIsometry, "polar factor of a rank-deficient matrix");
  RVector inv_sqrt = s.cwiseSqrt().cwiseInverse();
  return y * (solver.eigenvectors() * inv_sqrt.asDiagonal() * solver.eigenvectors().adjoint());
}

Rng derive_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x656e746cU};
  return Rng(seq);
}

}  // namespace entlock
