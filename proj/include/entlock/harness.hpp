#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "entlock/serialize.hpp"

namespace entlock {

inline constexpr double kInequalityTol = 1e-8;
inline constexpr double kIdentityTol = 1e-9;

/// One named property inside a report. A sample violates it when its slack
/// is below -tolerance. Identity checks use slack = -|lhs - rhs|.
struct CheckResult {
  std::string name;
  double tolerance = kInequalityTol;
  int violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();
};

struct SweepReport {
  std::string property;
  Json params = Json::object();
  int samples = 0;
  int violations = 0;  // samples violating at least one check, plus failed fixed checks
  double min_slack = std::numeric_limits<double>::infinity();  // of checks[0]
  Json worst_case;                                             // inputs of the sample attaining min_slack
  std::uint64_t seed = 0;
  double wallclock_ms = 0.0;
  std::vector<CheckResult> checks;

  bool passed() const noexcept { return violations == 0; }
};

/// wallclock_ms is written as null unless `timing` is set, so reports from a
/// fixed seed are byte-identical.
Json sweep_report_to_json(const SweepReport& rep, bool timing = false);

/// Re-evaluates the headline slack of a report's worst_case payload.
double replay(const std::string& property, const Json& worst_case);
inline double replay(const SweepReport& rep) { return replay(rep.property, rep.worst_case); }

/// chi(Lambda(E_0)), chi(Lambda(E_1)) and I(tau; Lambda) for the computational
/// basis and the basis given by the columns of `conj_basis`.
struct Lemma1Terms {
  double chi0 = 0.0, chi1 = 0.0, mutual = 0.0;
  double slack() const noexcept { return mutual - chi0 - chi1; }
};
Lemma1Terms lemma1_terms(const KrausChannel& ch, const CMatrix& conj_basis);

SweepReport verify_lemma1(int d, const AbelianGroup& group, int samples, int d_out, int d_env, std::uint64_t seed);
SweepReport verify_lemma1_relent_form(int d, int samples, std::uint64_t seed);
SweepReport verify_omega_identities(int d, int samples, std::uint64_t seed);
SweepReport verify_prop1(int d, int samples, std::span<const int> env_dims, std::uint64_t seed);
SweepReport verify_prop2_formula(int d, int m, int samples, std::uint64_t seed);
SweepReport verify_prop3(int d, int samples, std::uint64_t seed);
SweepReport verify_omega_corollary(int d, const OptConfig& cfg);
SweepReport verify_coherent_info_bound(int d, int samples, std::uint64_t seed);
SweepReport verify_maassen_uffink(int d, int samples, std::uint64_t seed);

/// Exploration only: lemma1 slack for random channels (d_out = d_env = d),
/// with the conjugate basis either Fourier or Haar-random per sample.
std::vector<double> lemma1_slack_samples(int d, int samples, std::uint64_t seed, bool haar_basis);

/// Classical-flag channel on the purifier A'C of the flower state: records
/// the shared label i into E. Input factor order (A', C).
KrausChannel flower_flag_channel(int d, std::span<const CMatrix> unitaries);

/// Value of 1/2 I(AA';BB') for the (generalized) flower state: 1/2 log d + log m + 1.
double flower_esq_value(int d, int m);

}  // namespace entlock
