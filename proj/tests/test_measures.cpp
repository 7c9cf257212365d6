#include <gtest/gtest.h>

#include <cmath>

#include "entlock/harness.hpp"
#include "entlock/measures.hpp"

using namespace entlock;

namespace {

// Central finite difference of f along z, against Re <egrad, z>.
void expect_gradient_matches(const StiefelObjective& f, const CMatrix& v, Rng& rng, double tol) {
  CMatrix g;
  f(v, &g);
  for (int trial = 0; trial < 3; ++trial) {
    const CMatrix z = complex_gaussian(v.rows(), v.cols(), rng);
    const double h = 1e-5;
    const double fd = (f(v + h * z, nullptr) - f(v - h * z, nullptr)) / (2 * h);
    const double an = (g.adjoint() * z).trace().real();
    EXPECT_NEAR(fd, an, tol * std::max(1.0, std::abs(fd)));
  }
}

OptConfig small_cfg(std::uint64_t seed = 1, int restarts = 6) {
  OptConfig c;
  c.restarts = restarts;
  c.seed = seed;
  return c;
}

const std::vector<int> kA{0}, kB{1};

}  // namespace

TEST(Povm, Validation) {
  const std::vector<CMatrix> ok{CMatrix::Identity(2, 2) * 0.5, CMatrix::Identity(2, 2) * 0.5};
  EXPECT_EQ(Povm(ok).size(), 2u);
  const std::vector<CMatrix> bad{CMatrix::Identity(2, 2) * 0.5};
  EXPECT_THROW(Povm{bad}, Error);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = 1.0;
  CMatrix rest = CMatrix::Zero(2, 2);
  rest(0, 0) = -0.5;
  const std::vector<CMatrix> negs{neg, rest};
  EXPECT_THROW(Povm{negs}, Error);
}

TEST(Gradient, ExtensionChannelObjective) {
  Rng rng(1);
  const PureState psi = random_pure_state(DimList{2, 3, 3}, rng);
  const std::vector<int> a{0}, b{1};
  const ExtensionModel model(psi, a, b);
  for (const auto& terms : {half_cmi_terms(), ep_terms()}) {
    const ExtensionObjective obj(model, ParamKind::Channel, 2, 3, terms);
    const CMatrix v = haar_isometry(3, 6, rng);
    expect_gradient_matches(std::cref(obj), v, rng, 1e-6);
  }
}

TEST(Gradient, ExtensionMeasurementObjective) {
  Rng rng(2);
  const PureState psi = random_pure_state(DimList{2, 2, 3}, rng);
  const std::vector<int> a{0}, b{1};
  const ExtensionModel model(psi, a, b);
  const ExtensionObjective obj(model, ParamKind::Measurement, 3, 3, half_cmi_terms());
  const CMatrix v = haar_isometry(3, 9, rng);
  expect_gradient_matches(std::cref(obj), v, rng, 1e-6);
}

TEST(Gradient, AccessibleInformationObjective) {
  Rng rng(3);
  const auto [e0, e1] = basis_ensembles(fourier_unitary(3));
  const StiefelObjective f = accessible_information_objective(Ensemble::mix(0.5, e0, e1), 5);
  const CMatrix v = haar_isometry(3, 15, rng);
  expect_gradient_matches(f, v, rng, 1e-6);
}

TEST(ExtensionObjective, MatchesDensityMatrixEvaluation) {
  Rng rng(4);
  const DensityOperator rho = random_density(DimList{2, 2}, rng);
  const KrausChannel ch = random_channel(4, 3, 2, rng);
  const std::vector<int> a{0}, b{1}, e{2};
  const DensityOperator ext = apply_to_factor(ch, purify(rho), 2);
  EXPECT_NEAR(cmi_for_extension(rho, ch, a, b), 0.5 * conditional_mutual_information(ext, a, b, e), 1e-10);
  const std::vector<int> ae{0, 2};
  EXPECT_NEAR(ep_for_extension(purify(rho), ch, a, b), entropy(ext.reduce(ae)), 1e-10);
  EXPECT_THROW(cmi_for_extension(rho, random_channel(3, 2, 2, rng), a, b), Error);
}

TEST(Stiefel, FailedFlagOnNonFiniteObjective) {
  const StiefelObjective f = [](const CMatrix&, CMatrix* g) {
    if (g) *g = CMatrix::Zero(2, 1);
    return std::numeric_limits<double>::quiet_NaN();
  };
  CMatrix v = CMatrix::Zero(2, 1);
  v(0, 0) = 1.0;
  EXPECT_TRUE(minimize_on_stiefel(f, v, {}).failed);
}

TEST(Stiefel, StaysOnManifoldAndDescends) {
  Rng rng(5);
  const PureState psi = random_pure_state(DimList{2, 2, 4}, rng);
  const ExtensionModel model(psi, kA, kB);
  const ExtensionObjective obj(model, ParamKind::Channel, 2, 4, half_cmi_terms());
  const CMatrix v0 = haar_isometry(4, 8, rng);
  const StiefelResult r = minimize_on_stiefel(std::cref(obj), v0, {});
  EXPECT_FALSE(r.failed);
  EXPECT_LE(r.value, obj(v0, nullptr) + 1e-12);
  EXPECT_LE(max_abs(r.point.adjoint() * r.point - CMatrix::Identity(4, 4)), 1e-10);
  EXPECT_NEAR(obj(r.point, nullptr), r.value, 1e-12);
}

TEST(SquashedUpperBound, MaxEntangledIsConstant) {
  const DensityOperator phi = max_entangled(2).density();
  for (int e : {1, 2, 3}) {
    const OptReport r = squashed_upper_bound(phi, kA, kB, e, small_cfg());
    EXPECT_NEAR(r.value, 1.0, 1e-8);
  }
}

TEST(SquashedUpperBound, EnvDimOneIsHalfMutualInformation) {
  Rng rng(6);
  const DensityOperator rho = random_density(DimList{2, 2}, rng);
  const OptReport r = squashed_upper_bound(rho, kA, kB, 1, small_cfg(2, 2));
  EXPECT_NEAR(r.value, 0.5 * mutual_information(rho, kA, kB), 1e-10);
}

TEST(SquashedUpperBound, SeparableStateNearZero) {
  Rng rng(7);
  CMatrix sep = CMatrix::Zero(4, 4);
  const double p[3] = {0.5, 0.3, 0.2};
  for (double w : p) sep += w * kron(random_pure_state(DimList{2}, rng).density().mat(),
                                     random_pure_state(DimList{2}, rng).density().mat());
  const DensityOperator rho(sep, DimList{2, 2});
  const OptReport r = squashed_upper_bound(rho, kA, kB, 3, small_cfg(3, 8));
  EXPECT_LE(r.value, 1e-4);
  EXPECT_LE(r.value, 0.5 * mutual_information(rho, kA, kB) + 1e-8);
}

TEST(SquashedUpperBound, FlowerValue) {
  const PureState psi = flower_purification(2);
  const std::vector<int> a{0, 1}, b{2, 3};
  for (int e : {1, 2, 4}) {
    const OptReport r = squashed_upper_bound(psi, a, b, e, small_cfg(4));
    EXPECT_NEAR(r.value, 1.5, 1e-3) << "env_dim " << e;
    // every restart, including the random ones, stays above the bound
    for (double h : r.history) EXPECT_GE(h, 1.5 - 1e-8);
  }
  const OptReport m = squashed_upper_bound_measurement(psi, a, b, 2, small_cfg(4));
  EXPECT_NEAR(m.value, 1.5, 1e-3);
}

TEST(SquashedUpperBound, RandomRestartsReachFlowerValue) {
  // Without the trivial start: a restart from a Haar point must still find 1.5.
  const PureState psi = flower_purification(2);
  const std::vector<int> a{0, 1}, b{2, 3};
  const OptReport r = squashed_upper_bound(psi, a, b, 2, small_cfg(5, 4));
  double best_random = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < r.history.size(); ++k) best_random = std::min(best_random, r.history[k]);
  EXPECT_NEAR(best_random, 1.5, 1e-3);
}

TEST(SquashedUpperBound, ReportReevaluates) {
  Rng rng(8);
  const DensityOperator rho = random_density(DimList{2, 2}, rng);
  const OptReport r = squashed_upper_bound(rho, kA, kB, 2, small_cfg());
  const ExtensionModel model(rho, kA, kB);
  EXPECT_NEAR(reevaluate(r, model, half_cmi_terms()), r.value, 1e-8);
  EXPECT_EQ(static_cast<int>(r.history.size()), 6);
  EXPECT_NEAR(*std::min_element(r.history.begin(), r.history.end()), r.value, 0.0);
  EXPECT_THROW(squashed_upper_bound(rho, kA, kB, 0, small_cfg()), Error);
}

TEST(SquashedUpperBound, Deterministic) {
  Rng rng(9);
  const DensityOperator rho = random_density(DimList{2, 2}, rng);
  const OptReport a = squashed_upper_bound(rho, kA, kB, 2, small_cfg(11));
  const OptReport b = squashed_upper_bound(rho, kA, kB, 2, small_cfg(11));
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.history, b.history);
  EXPECT_EQ(a.best_restart, b.best_restart);
}

TEST(EntanglementOfPurification, Examples) {
  Rng rng(10);
  const DensityOperator prod = tensor(random_density(DimList{2}, rng), random_density(DimList{2}, rng));
  EXPECT_LE(entanglement_of_purification(prod, kA, kB, 0, small_cfg()).value, 1e-3);

  const auto [ps, pa] = sym_antisym_projectors(2);
  const DensityOperator singlet(pa, DimList{2, 2});
  EXPECT_NEAR(entanglement_of_purification(singlet, kA, kB, 2, small_cfg()).value, 1.0, 1e-10);

  const DensityOperator om = omega_state(2);
  const std::vector<int> a{0, 1}, b{2};
  const OptReport r = entanglement_of_purification(om, a, b, 4, small_cfg());
  EXPECT_NEAR(r.value, 1.0, 5e-3);
  EXPECT_LE(r.value, entropy(om.reduce(b)) + 1e-8);
  const std::vector<int> a1{1};
  EXPECT_LE(entanglement_of_purification(om, a1, b, 4, small_cfg()).value, 5e-3);
}

TEST(EntanglementOfPurification, SymmetricSupportedFloor) {
  Rng rng(11);
  const auto [ps, pa] = sym_antisym_projectors(2);
  for (int trial = 0; trial < 3; ++trial) {
    const DensityOperator rho = random_supported_state(ps, 2, rng);
    const OptReport r = entanglement_of_purification(rho, kA, kB, 0, small_cfg(trial));
    const double sa = entropy(rho.reduce(kA));
    EXPECT_GE(r.value, sa - 1e-8);
    EXPECT_NEAR(r.value, sa, 5e-3);
  }
}

TEST(EntanglementOfPurification, SeriesIsMonotone) {
  Rng rng(12);
  const DensityOperator rho = random_density(DimList{2, 2}, rng);
  const std::vector<OptReport> s = ep_series(rho, kA, kB, 4, small_cfg(3, 3));
  ASSERT_EQ(s.size(), 4u);
  for (std::size_t k = 1; k < s.size(); ++k) EXPECT_LE(s[k].value, s[k - 1].value + 1e-12);
  EXPECT_EQ(s[0].d_out, 1);
  // ext_dim 1 is the trivial extension
  EXPECT_NEAR(s[0].value, entropy(rho.reduce(kA)), 1e-10);
}

TEST(EntanglementOfPurification, Additivity) {
  const auto [ps, pa] = sym_antisym_projectors(2);
  const DensityOperator singlet(pa, DimList{2, 2});
  const AdditivityReport r = ep_additivity_check(singlet, singlet, small_cfg());
  EXPECT_NEAR(r.first.value, 1.0, 5e-3);
  EXPECT_NEAR(r.second.value, 1.0, 5e-3);
  EXPECT_NEAR(r.joint.value, 2.0, 5e-3);

  CMatrix k00 = CMatrix::Zero(4, 4);
  k00(0, 0) = 1.0;
  const DensityOperator zz(k00, DimList{2, 2});
  const AdditivityReport z = ep_additivity_check(zz, zz, small_cfg());
  EXPECT_NEAR(z.first.value, 0.0, 1e-10);
  EXPECT_NEAR(z.joint.value, 0.0, 1e-10);

  Rng rng(13);
  const DensityOperator sym = random_supported_state(ps, 2, rng);
  const AdditivityReport m = ep_additivity_check(singlet, sym, small_cfg(2));
  const double floor = entropy(singlet.reduce(kA)) + entropy(sym.reduce(kA));
  EXPECT_GE(m.joint.value, floor - 1e-8);
  EXPECT_NEAR(m.joint.value, m.first.value + m.second.value, 5e-3);
}

TEST(EntanglementOfPurification, LocalInstrumentMonotonicity) {
  // E_P(rho) >= sum_k p_k E_P(rho_k) for a two-outcome instrument on A.
  Rng rng(14);
  const auto [ps, pa] = sym_antisym_projectors(2);
  for (int trial = 0; trial < 3; ++trial) {
    const DensityOperator rho = random_supported_state(ps, 2, rng);
    const CMatrix u = haar_unitary(2, rng);
    RVector lam(2);
    lam << 0.2 + 0.6 * std::uniform_real_distribution<double>(0, 1)(rng), 0.3;
    const CMatrix e0 = u * lam.cast<Complex>().asDiagonal() * u.adjoint();
    const CMatrix m0 = hermitian_function(e0, [](double x) { return std::sqrt(std::max(x, 0.0)); });
    const CMatrix m1 = hermitian_function(CMatrix(CMatrix::Identity(2, 2) - e0),
                                          [](double x) { return std::sqrt(std::max(x, 0.0)); });
    const double lhs = entanglement_of_purification(rho, kA, kB, 0, small_cfg(trial)).value;
    double rhs = 0.0;
    for (const CMatrix& mk : {m0, m1}) {
      const CMatrix op = kron(mk, CMatrix::Identity(2, 2));
      const CMatrix out = op * rho.mat() * op.adjoint();
      const double p = out.trace().real();
      const DensityOperator rk(out / p, DimList{2, 2});
      rhs += p * entanglement_of_purification(rk, kA, kB, 0, small_cfg(trial)).value;
    }
    EXPECT_GE(lhs, rhs - 5e-3);
  }
}

TEST(AccessibleInformation, Examples) {
  CMatrix k0 = CMatrix::Zero(2, 2), k1 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k1(1, 1) = 1.0;
  const Ensemble orth({{0.5, DensityOperator(k0, DimList{2})}, {0.5, DensityOperator(k1, DimList{2})}});
  EXPECT_NEAR(accessible_information(orth, 2, small_cfg()).value, 1.0, 1e-4);
  const Ensemble same({{0.5, DensityOperator(k0, DimList{2})}, {0.5, DensityOperator(k0, DimList{2})}});
  EXPECT_NEAR(accessible_information(same, 2, small_cfg()).value, 0.0, 1e-8);
  EXPECT_THROW(accessible_information(orth, 0, small_cfg()), Error);
}

TEST(AccessibleInformation, ConjugatePair) {
  for (int d : {2, 4}) {
    const auto [e0, e1] = basis_ensembles(fourier_unitary(d));
    const Ensemble ens = Ensemble::mix(0.5, e0, e1);
    OptConfig cfg = small_cfg(6, 16);
    const OptReport r = accessible_information(ens, d * d, cfg);
    EXPECT_NEAR(r.value, 0.5 * std::log2(d), 2e-3);
    for (double h : r.history) {
      EXPECT_LE(h, 0.5 * std::log2(d) + 1e-6);
      EXPECT_LE(h, holevo_chi(ens) + 1e-8);
    }
    const Povm best = povm_from_isometry(r.best_params, d * d);
    EXPECT_NEAR(povm_mutual_information(ens, best), r.value, 1e-8);
  }
}

TEST(EfFlower, Values) {
  const std::vector<CMatrix> id2{CMatrix::Identity(2, 2)};
  const EfFlowerResult r2 = ef_flower(2, id2, 0, small_cfg(1, 8));
  EXPECT_NEAR(r2.marginal_entropy, 2.0, 1e-10);
  EXPECT_NEAR(r2.value, 1.5, 2e-3);
  const std::vector<CMatrix> id4{CMatrix::Identity(4, 4)};
  EXPECT_NEAR(ef_flower(4, id4, 0, small_cfg(1, 8)).value, 2.0, 2e-3);

  const PureState psi = flower_purification(2);
  const std::vector<int> a{0, 1}, b{2, 3};
  EXPECT_GE(r2.value, squashed_upper_bound(psi, a, b, 2, small_cfg()).value - 1e-3);
}

TEST(EfFlower, EnsembleAveragesToTau) {
  Rng rng(15);
  const std::vector<CMatrix> us{haar_unitary(3, rng), haar_unitary(3, rng)};
  const Ensemble ens = flower_ensemble(3, us);
  EXPECT_EQ(ens.size(), 12u);
  EXPECT_LT(max_abs(ens.average().mat() - maximally_mixed(3).mat()), 1e-12);
}
