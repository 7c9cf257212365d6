#pragma once

#include <vector>

#include "entlock/channels.hpp"

namespace entlock {

// All logarithms are base 2; every returned quantity is in bits.

/// Eigenvalues in [-1e-10, 0) are clamped to zero; anything more negative
/// is rejected as NotAState.
inline constexpr double kEigenClampTol = 1e-10;

/// Relative entropy value with an explicit +infinity tag.
class BitValue {
 public:
  constexpr BitValue() = default;
  constexpr explicit BitValue(double bits) : bits_(bits) {}
  static constexpr BitValue infinity() {
    BitValue v;
    v.infinite_ = true;
    return v;
  }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  /// Finite value; throws if infinite.
  double bits() const;

 private:
  double bits_ = 0.0;
  bool infinite_ = false;
};

/// Shannon entropy of a probability vector (0 log 0 = 0).
double shannon_entropy(std::span<const double> p);

/// -sum lambda log lambda of a spectrum, with the clamp rule above.
double spectrum_entropy(const RVector& eigenvalues);

double entropy(const DensityOperator& rho);
/// Entropy of a Hermitian PSD matrix given without dimension metadata.
double entropy(const CMatrix& rho);

BitValue relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

/// S(A) + S(B) - S(AB) for disjoint factor sets A, B (other factors traced).
double mutual_information(const DensityOperator& state, std::span<const int> part_a, std::span<const int> part_b);

/// S(AE) + S(BE) - S(E) - S(ABE); an empty E reduces to mutual information.
double conditional_mutual_information(const DensityOperator& state, std::span<const int> part_a,
                                      std::span<const int> part_b, std::span<const int> part_e);

/// S(E|A) = S(EA) - S(A).
double conditional_entropy(const DensityOperator& state, std::span<const int> part_e, std::span<const int> part_a);

/// S(avg) - sum p_i S(rho_i).
double holevo_chi(const Ensemble& ens);

/// Applies the channel to every member.
Ensemble push_forward(const KrausChannel& ch, const Ensemble& ens);

/// (id (x) ch) Phi_d on dims (d, d_out).
DensityOperator choi_state(const KrausChannel& ch);

/// I(tau; ch) = S(tau) + S(ch(tau)) - S((id (x) ch) Phi_d).
double channel_mutual_information(const KrausChannel& ch, int d);

/// S(ch(tau)) - S((id (x) ch) Phi_d).
double coherent_information(const KrausChannel& ch, int d);

/// Entropy of the marginal on `cut` of a pure state.
double entanglement_entropy(const PureState& psi, std::span<const int> cut);

/// Entropy of the marginal of a pure vector on `keep`, diagonalizing the
/// smaller of the two Gram matrices.
double pure_marginal_entropy(const CVector& v, const DimList& dims, std::span<const int> keep);

}  // namespace entlock
