#pragma once

#include <vector>

#include "entlock/states.hpp"

namespace entlock {

/// Completeness tolerance for sum_k K_k^dag K_k = I.
inline constexpr double kKrausTol = 1e-9;

/// CPTP map given by Kraus operators (each d_out x d_in).
class KrausChannel {
 public:
  /// Throws NotCptp if the Kraus set is incomplete beyond kKrausTol.
  explicit KrausChannel(std::vector<CMatrix> kraus);

  const std::vector<CMatrix>& kraus() const noexcept { return kraus_; }
  int d_in() const noexcept { return d_in_; }
  int d_out() const noexcept { return d_out_; }

  /// max-norm of sum_k K^dag K - I.
  double completeness_error() const;

 private:
  std::vector<CMatrix> kraus_;
  int d_in_ = 0;
  int d_out_ = 0;
};

/// sum_k K rho K^dag. The output carries dims {d_out}.
DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho);

/// Acts on one tensor factor with the identity elsewhere; the output has
/// d_out at that slot.
DensityOperator apply_to_factor(const KrausChannel& ch, const DensityOperator& rho, int factor);
DensityOperator apply_to_factor(const KrausChannel& ch, const PureState& psi, int factor);

KrausChannel identity_channel(int d);
/// Kraus {(1/sqrt d)|i><j|}: every input goes to the maximally mixed state.
KrausChannel completely_depolarizing(int d);
/// Discards the input and prepares |0><0| on a d_out-dimensional output.
KrausChannel replacement_channel(int d_in, int d_out);
KrausChannel unitary_channel(const CMatrix& u);

/// Projective measurement in the columns of `basis`, keeping the projected
/// state: Kraus {|b_i><b_i|}.
KrausChannel dephasing_channel(const CMatrix& basis);

/// Quantum-to-classical map X -> sum_y Tr(A_y X)|y><y| for POVM effects A_y.
KrausChannel measurement_channel(std::span<const CMatrix> effects);

/// Kraus K_e = (I (x) <e|) V for an isometry V : C^{d_in} -> C^{d_out} (x) C^{d_env}.
/// Throws NotIsometry if V^dag V differs from I by more than 1e-9.
KrausChannel channel_from_isometry(const CMatrix& v, int d_out, int d_env);

/// Stinespring isometry sum_e K_e (x) |e>, rows ordered (out, env).
CMatrix stinespring_isometry(const KrausChannel& ch);

/// channel_from_isometry(haar_isometry(d_in, d_out * d_env)).
KrausChannel random_channel(int d_in, int d_out, int d_env, Rng& rng);

/// second o first.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);

/// (X^a Z^b (x) 1) rho (Z^-b X^-a (x) 1), acting on factor 0.
DensityOperator weyl_twist(const DensityOperator& rho, int a, int b, const AbelianGroup& group);

}  // namespace entlock
