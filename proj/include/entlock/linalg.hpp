#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "entlock/error.hpp"

namespace entlock {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Tolerance for Hermiticity checks (max-norm of M - M^dag).
inline constexpr double kHermitianTol = 1e-10;

/// Ordered tensor-factor dimensions annotating a vector or matrix.
/// Factor indices are 0-based; factor 0 is the most significant digit of a
/// flattened basis index.
class DimList {
 public:
  DimList() = default;
  DimList(std::initializer_list<int> dims);
  explicit DimList(std::vector<int> dims);

  std::size_t size() const noexcept { return dims_.size(); }
  int operator[](std::size_t i) const { return dims_[i]; }
  const std::vector<int>& dims() const noexcept { return dims_; }
  auto begin() const noexcept { return dims_.begin(); }
  auto end() const noexcept { return dims_.end(); }

  /// Product of all factor dimensions.
  Eigen::Index total() const noexcept;
  /// Product of the dimensions of the listed factors.
  Eigen::Index total(std::span<const int> factors) const;
  /// Dimensions of the listed factors, in the listed order.
  DimList select(std::span<const int> factors) const;
  /// Factors not in `factors`, ascending.
  std::vector<int> complement(std::span<const int> factors) const;
  /// Copy with factor `i` replaced by dimension `d`.
  DimList with(std::size_t i, int d) const;
  /// Concatenation.
  DimList operator+(const DimList& other) const;

  bool operator==(const DimList&) const = default;

 private:
  std::vector<int> dims_;
};

/// Maximum absolute entry.
double max_abs(const CMatrix& m);

/// Kronecker product a (x) b.
CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

/// Kronecker product of a list, left to right.
CMatrix kron_all(std::span<const CMatrix> factors);

bool is_hermitian(const CMatrix& m, double tol = kHermitianTol);

struct HermitianEig {
  RVector values;  // ascending
  CMatrix vectors;  // columns
};

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
/// (M + M^dag)/2 before solving; throws NotHermitian if the asymmetry exceeds
/// kHermitianTol.
HermitianEig hermitian_eig(const CMatrix& m);

/// Eigenvalues only; same checks as hermitian_eig.
RVector hermitian_eigenvalues(const CMatrix& m);

/// Apply f to the spectrum of a Hermitian matrix.
template <typename F>
CMatrix hermitian_function(const CMatrix& m, F&& f) {
  const HermitianEig eig = hermitian_eig(m);
  RVector fv = eig.values.unaryExpr(f);
  return eig.vectors * fv.asDiagonal() * eig.vectors.adjoint();
}

/// Reduced operator on the `keep` factors (order of `keep` is irrelevant;
/// kept factors appear in ascending original order).
CMatrix partial_trace(const CMatrix& rho, const DimList& dims, std::span<const int> keep);

/// Reorders tensor factors: output factor k is input factor perm[k].
CVector permute_systems(const CVector& v, const DimList& dims, std::span<const int> perm);
CMatrix permute_systems(const CMatrix& m, const DimList& dims, std::span<const int> perm);

/// Inverse of a permutation given as perm[k] = source factor of slot k.
std::vector<int> inverse_permutation(std::span<const int> perm);

/// Reduced density matrix of the pure state |v><v| on the `keep` factors,
/// computed without forming |v><v|.
CMatrix pure_marginal(const CVector& v, const DimList& dims, std::span<const int> keep);

/// Swap operator F on C^d (x) C^d.
CMatrix swap_operator(int d);

/// Complex matrix with iid entries (N(0,1) + i N(0,1))/sqrt(2).
CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-random d x d unitary (Gaussian + QR with phase-corrected R diagonal).
CMatrix haar_unitary(int d, Rng& rng);

/// Haar-random isometry C^{d_in} -> C^{d_out}; throws BadShape if d_out < d_in.
CMatrix haar_isometry(int d_in, int d_out, Rng& rng);

/// Nearest isometry Y (Y^dag Y)^{-1/2} (polar factor) of a full-column-rank Y.
CMatrix polar_isometry(const CMatrix& y);

/// Independent generator for stream `stream` of a run seeded with `seed`.
Rng derive_rng(std::uint64_t seed, std::uint64_t stream);

}  // namespace entlock
