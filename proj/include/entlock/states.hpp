#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "entlock/linalg.hpp"

namespace entlock {

/// Positive, unit-trace Hermitian operator with tensor-factor dimensions.
class DensityOperator {
 public:
  /// Validates Hermiticity (1e-10), eigenvalues >= -1e-10 and unit trace (1e-10).
  DensityOperator(CMatrix mat, DimList dims);

  /// For results that are states by construction (channel outputs, marginals):
  /// checks shape, Hermiticity and trace but skips the eigenvalue test.
  static DensityOperator trusted(CMatrix mat, DimList dims);

  const CMatrix& mat() const noexcept { return mat_; }
  const DimList& dims() const noexcept { return dims_; }
  Eigen::Index dim() const noexcept { return mat_.rows(); }

  /// Marginal on the listed factors.
  DensityOperator reduce(std::span<const int> keep) const;
  /// Same operator viewed with a different factorization of the same space.
  DensityOperator regroup(DimList dims) const;

 private:
  struct Trusted {};
  DensityOperator(CMatrix mat, DimList dims, Trusted);
  CMatrix mat_;
  DimList dims_;
};

/// Unit vector with tensor-factor dimensions; a purification records which
/// factor is the purifying system.
class PureState {
 public:
  PureState(CVector vec, DimList dims, std::optional<int> purifying_factor = std::nullopt);

  const CVector& vec() const noexcept { return vec_; }
  const DimList& dims() const noexcept { return dims_; }
  std::optional<int> purifying_factor() const noexcept { return purifying_factor_; }

  DensityOperator density() const;
  /// Marginal on the listed factors, without forming |psi><psi|.
  DensityOperator reduce(std::span<const int> keep) const;

 private:
  CVector vec_;
  DimList dims_;
  std::optional<int> purifying_factor_;
};

struct EnsembleItem {
  double prob;
  DensityOperator state;
};

/// Finite list of (probability, state) on a common space.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleItem> items);

  const std::vector<EnsembleItem>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  Eigen::Index dim() const noexcept { return items_.front().state.dim(); }
  DensityOperator average() const;
  /// Mixture p * a + (1-p) * b as a single ensemble.
  static Ensemble mix(double p, const Ensemble& a, const Ensemble& b);

 private:
  std::vector<EnsembleItem> items_;
};

/// Finite Abelian group labelling a basis: Z_d, or Z_2^l with d = 2^l. Provides
/// the group Fourier transform and its regular representation (shift X^a)
/// together with the conjugate phase operators Z^b = U X^b U^dag.
class AbelianGroup {
 public:
  enum class Kind { Zd, Z2l };

  static AbelianGroup zd(int d);
  static AbelianGroup z2l(int l);

  Kind kind() const noexcept { return kind_; }
  int order() const noexcept { return d_; }
  CMatrix fourier() const;
  /// X^a, with a an element index in [0, order).
  CMatrix shift(int a) const;
  /// Z^b, with b an element index in [0, order).
  CMatrix phase(int b) const;

 private:
  AbelianGroup(Kind kind, int d, int l) : kind_(kind), d_(d), l_(l) {}
  Kind kind_;
  int d_;
  int l_;
};

DensityOperator maximally_mixed(int d);

/// (1/sqrt d) sum_i |ii> on dims (d, d).
PureState max_entangled(int d);

/// U_{jk} = exp(2 pi i jk/d)/sqrt(d), 0-based.
CMatrix fourier_unitary(int d);

/// l-fold Kronecker power of the qubit Hadamard.
CMatrix hadamard_tensor(int l);

/// Cyclic shift X|i> = |i+1 mod d>.
CMatrix weyl_x(int d);
/// Phase Z|i> = exp(2 pi i i/d)|i>.
CMatrix weyl_z(int d);

/// Uniform ensembles over the computational basis and over the columns of u.
std::pair<Ensemble, Ensemble> basis_ensembles(const CMatrix& u);

/// Purification on (A, A', B, B', C) = (d, 2, d, 2, d) of the locking state
/// built from the computational basis and its Fourier conjugate.
PureState flower_purification(int d);

/// Generalization with m extra unitaries V_k: dims (d, 2m, d, 2m, d), where
/// the A' (and B') index is j*m + k.
PureState flower_purification_general(int d, std::span<const CMatrix> unitaries);

/// (P_sym, P_anti) on C^d (x) C^d.
std::pair<CMatrix, CMatrix> sym_antisym_projectors(int d);

/// State on (A', A, B) = (2, d, d) mixing normalized P_sym and P_anti with a
/// classical flag in A'.
DensityOperator omega_state(int d);

/// Mixture (uniform Dirichlet weights) of `rank` random unit vectors from the
/// range of `projector`; dims (n, n) when the projector acts on n*n, else (dim).
DensityOperator random_supported_state(const CMatrix& projector, int rank, Rng& rng);

/// Purification via eigendecomposition; the purifying factor (appended last)
/// has dimension rank(rho).
PureState purify(const DensityOperator& rho);

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
PureState tensor(const PureState& a, const PureState& b);

/// Haar-random pure state.
PureState random_pure_state(const DimList& dims, Rng& rng);
/// Hilbert-Schmidt random mixed state G G^dag / Tr.
DensityOperator random_density(const DimList& dims, Rng& rng);

}  // namespace entlock
