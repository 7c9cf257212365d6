#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entlock/entropics.hpp"
#include "entlock/stiefel.hpp"

namespace entlock {

/// Positive effects summing to the identity (tolerance 1e-8).
class Povm {
 public:
  explicit Povm(std::vector<CMatrix> effects);
  const std::vector<CMatrix>& effects() const noexcept { return effects_; }
  std::size_t size() const noexcept { return effects_.size(); }

 private:
  std::vector<CMatrix> effects_;
};

struct OptConfig {
  int restarts = 16;
  int max_iters = 2000;
  double step_tol = 1e-8;
  double value_tol = 1e-7;
  std::uint64_t seed = 0;
  /// Stinespring environment dimension for channel searches; 0 = purifier dimension.
  int d_env = 0;
};

/// Where the reported optimum lives.
enum class ParamKind {
  Channel,      // isometry C -> E (x) env
  Measurement,  // Naimark isometry of a POVM on C; E holds the outcome
  Povm,         // Naimark isometry of a POVM on the ensemble space
  Analytic,     // closed form, no search
};

struct OptReport {
  std::string quantity;
  double value = 0.0;
  ParamKind kind = ParamKind::Analytic;
  /// Optimal isometry (Channel/Measurement/Povm).
  CMatrix best_params;
  int d_out = 0;  // E dimension, or number of POVM outcomes
  int d_env = 0;  // environment dimension (Channel), Naimark rank (Measurement/Povm)
  int best_restart = -1;
  bool converged = false;
  std::vector<double> history;  // best value per restart
  std::vector<int> iterations;  // per restart
  std::vector<bool> failed;     // per restart
  OptConfig config;
};

/// Entropy functional of an extension: coeff * S(keep) where keep indexes the
/// factors (A, B, E) of the extended state.
struct EntropyTerm {
  double coeff;
  std::vector<int> keep;
};

/// A bipartite state given by a purification psi, with A and B factor sets;
/// every remaining factor of psi is grouped into the purifier C. Extensions
/// are (id (x) Lambda) psi for channels Lambda : C -> E.
class ExtensionModel {
 public:
  ExtensionModel(const PureState& psi, std::span<const int> cut_a, std::span<const int> cut_b);
  /// Purifies rho first; A and B must cover rho's factors after reduction to
  /// cut_a + cut_b.
  ExtensionModel(const DensityOperator& rho, std::span<const int> cut_a, std::span<const int> cut_b);

  int dim_a() const noexcept { return dim_a_; }
  int dim_b() const noexcept { return dim_b_; }
  int dim_c() const noexcept { return dim_c_; }
  /// Amplitudes as a (dim_a*dim_b) x dim_c matrix.
  const CMatrix& amplitudes() const noexcept { return amps_; }

 private:
  void init(const PureState& psi, std::span<const int> cut_a, std::span<const int> cut_b);
  int dim_a_ = 0, dim_b_ = 0, dim_c_ = 0;
  CMatrix amps_;
};

/// Evaluates sum coeff * S(keep) on (id (x) Lambda_W) psi, where the Stinespring
/// isometry W : C -> E (x) env is either the parameter itself (Channel) or the
/// quantum-classical embedding of a Naimark isometry (Measurement, with E the
/// outcome register and Naimark rank dim_c).
class ExtensionObjective {
 public:
  ExtensionObjective(const ExtensionModel& model, ParamKind kind, int d_e, int d_env, std::vector<EntropyTerm> terms);

  /// Rows of the optimized parameter.
  Eigen::Index param_rows() const noexcept;
  double operator()(const CMatrix& v, CMatrix* egrad) const;
  /// Stinespring isometry (rows ordered E, env) realized by parameter v.
  CMatrix stinespring(const CMatrix& v) const;
  int d_e() const noexcept { return d_e_; }
  int d_env_total() const noexcept { return d_env_total_; }

 private:
  const ExtensionModel* model_;
  ParamKind kind_;
  int d_e_;
  int d_env_param_;  // env dimension of the parameter (Channel) or Naimark rank (Measurement)
  int d_env_total_;  // env dimension of the Stinespring isometry
  std::vector<EntropyTerm> terms_;
  DimList ext_dims_;
  struct TermLayout {
    double coeff;
    std::vector<Eigen::Index> table;
    Eigen::Index dk, dr;
  };
  std::vector<TermLayout> layouts_;
};

/// 1/2 I(A;B|E) terms.
std::vector<EntropyTerm> half_cmi_terms();
/// S(AE) term.
std::vector<EntropyTerm> ep_terms();

/// Upper bound on squashed entanglement: min of 1/2 I(A;B|E) over channels
/// C -> E with dim E = env_dim. Restart 0 starts from the trivial extension.
OptReport squashed_upper_bound(const DensityOperator& rho, std::span<const int> cut_a, std::span<const int> cut_b,
                               int env_dim, const OptConfig& cfg);
OptReport squashed_upper_bound(const PureState& psi, std::span<const int> cut_a, std::span<const int> cut_b,
                               int env_dim, const OptConfig& cfg);

/// Same, restricted to measurement extensions (E classical, `outcomes` values).
OptReport squashed_upper_bound_measurement(const PureState& psi, std::span<const int> cut_a,
                                           std::span<const int> cut_b, int outcomes, const OptConfig& cfg);

/// Upper bound on entanglement of purification at fixed dim E = ext_dim
/// (0 = purifier dimension). Rank-1 inputs short-circuit to the entropy of
/// entanglement.
OptReport entanglement_of_purification(const DensityOperator& rho, std::span<const int> cut_a,
                                       std::span<const int> cut_b, int ext_dim, const OptConfig& cfg);

/// E_P estimates for ext_dim = 1..cap; each size warm-starts from the previous
/// optimum so the series is non-increasing.
std::vector<OptReport> ep_series(const DensityOperator& rho, std::span<const int> cut_a, std::span<const int> cut_b,
                                 int cap, const OptConfig& cfg);

/// Classical mutual information between label and outcome for a POVM.
double povm_mutual_information(const Ensemble& ens, const Povm& povm);

/// Effects A_y = V_y^dag V_y of a Naimark isometry with `outcomes` row blocks.
Povm povm_from_isometry(const CMatrix& v, int outcomes);

/// Lower bound on accessible information, maximizing over POVMs with
/// `outcomes` effects of unconstrained rank.
OptReport accessible_information(const Ensemble& ens, int outcomes, const OptConfig& cfg);

/// Objective (-I(X;Y)) used by accessible_information, exposed for gradient checks.
StiefelObjective accessible_information_objective(const Ensemble& ens, int outcomes);

struct EfFlowerResult {
  double value = 0.0;             // S(rho^{AA'}) - I_acc estimate (upper bound on E_F)
  double marginal_entropy = 0.0;  // S(rho^{AA'})
  OptReport accessible;
};

/// Entanglement of formation of the (generalized) flower state via
/// S(rho^{AA'}) - I_acc of the ensemble induced on C. `unitaries` are the V_k
/// (a single identity gives the basic flower state). outcomes = 0 means d^2.
EfFlowerResult ef_flower(int d, std::span<const CMatrix> unitaries, int outcomes, const OptConfig& cfg);

/// Ensemble {1/(2dm), V_k U_j |i>} induced on C.
Ensemble flower_ensemble(int d, std::span<const CMatrix> unitaries);

/// 1/2 I(A;B|E) for the extension obtained by applying `channel` to the
/// purifier (all factors outside cut_a + cut_b for a PureState; the
/// eigen-purifier for a DensityOperator).
double cmi_for_extension(const PureState& psi, const KrausChannel& channel, std::span<const int> cut_a,
                         std::span<const int> cut_b);
double cmi_for_extension(const DensityOperator& rho, const KrausChannel& channel, std::span<const int> cut_a,
                         std::span<const int> cut_b);

/// S(AE) for the same kind of extension.
double ep_for_extension(const PureState& psi, const KrausChannel& channel, std::span<const int> cut_a,
                        std::span<const int> cut_b);

struct AdditivityReport {
  OptReport first, second, joint;
};

/// E_P estimates of rho1, rho2 (each on (A, B)) and of rho1 (x) rho2 with the
/// A sides grouped. ext_dim 0 means each purifier's dimension.
AdditivityReport ep_additivity_check(const DensityOperator& rho1, const DensityOperator& rho2, const OptConfig& cfg,
                                     int ext_dim = 0);

/// Re-evaluates a Channel/Measurement report's best_params on the given
/// problem; used to check report consistency.
double reevaluate(const OptReport& report, const ExtensionModel& model, std::span<const EntropyTerm> terms);

}  // namespace entlock
