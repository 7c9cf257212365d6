#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "entlock/entropics.hpp"

using namespace entlock;

namespace {

CMatrix matrix_power(const CMatrix& m, int k) {
  CMatrix out = CMatrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

}  // namespace

TEST(States, MaximallyMixed) {
  EXPECT_NEAR(maximally_mixed(1).mat()(0, 0).real(), 1.0, 1e-15);
  EXPECT_LT(max_abs(maximally_mixed(2).mat() - 0.5 * CMatrix::Identity(2, 2)), 1e-15);
  EXPECT_NEAR(entropy(maximally_mixed(4)), 2.0, 1e-12);
}

TEST(States, MaxEntangled) {
  const PureState phi = max_entangled(2);
  EXPECT_NEAR(phi.vec()(0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(phi.vec()(3).real(), 1.0 / std::sqrt(2.0), 1e-15);
  const std::vector<int> one{1};
  EXPECT_LT(max_abs(max_entangled(3).reduce(one).mat() - maximally_mixed(3).mat()), 1e-12);
  const std::vector<int> zero{0};
  EXPECT_NEAR(entanglement_entropy(max_entangled(3), zero), std::log2(3.0), 1e-12);
}

TEST(States, Fourier) {
  EXPECT_LT(max_abs(fourier_unitary(2) - hadamard_tensor(1)), 1e-15);
  for (int d : {2, 3, 5, 6}) {
    const CMatrix u = fourier_unitary(d);
    EXPECT_LE(max_abs(u.adjoint() * u - CMatrix::Identity(d, d)), 1e-12);
    EXPECT_LE(max_abs(matrix_power(u, 4) - CMatrix::Identity(d, d)), 1e-10);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) EXPECT_NEAR(std::norm(u(j, k)), 1.0 / d, 1e-12);
    EXPECT_LT(std::abs(u(1, 1) - std::polar(1.0 / std::sqrt(d), 2 * std::numbers::pi / d)), 1e-12);
  }
}

TEST(States, Hadamard) {
  const CMatrix h2 = hadamard_tensor(2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(h2(i, j)), 0.5, 1e-15);
  EXPECT_LE(max_abs(h2 * h2 - CMatrix::Identity(4, 4)), 1e-12);
}

TEST(States, Weyl) {
  CMatrix sx(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  EXPECT_LE(max_abs(weyl_x(2) - sx), 1e-15);
  EXPECT_LE(max_abs(weyl_z(2) - sz), 1e-15);
  for (int d : {2, 3, 5}) {
    const CMatrix x = weyl_x(d), z = weyl_z(d), u = fourier_unitary(d);
    const Complex w = std::polar(1.0, 2 * std::numbers::pi / d);
    EXPECT_LE(max_abs(z * x - w * x * z), 1e-12);
    EXPECT_LE(max_abs(matrix_power(x, d) - CMatrix::Identity(d, d)), 1e-10);
    EXPECT_LE(max_abs(matrix_power(z, d) - CMatrix::Identity(d, d)), 1e-10);
    EXPECT_LE(max_abs(u * x * u.adjoint() - z), 1e-10);
    // X|i> = |i+1>
    EXPECT_EQ(x(1 % d, 0), Complex(1.0));
    // columns of U are eigenvectors of X
    for (int k = 0; k < d; ++k) {
      const CVector col = u.col(k);
      const Complex lam = col.dot(x * col);
      EXPECT_LE((x * col - lam * col).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(States, Z2lGroupMatchesPauliTensors) {
  const AbelianGroup g = AbelianGroup::z2l(2);
  CMatrix sx(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  const CMatrix id = CMatrix::Identity(2, 2);
  // a = 2 = binary 10: sigma_x on the most significant qubit
  EXPECT_LE(max_abs(g.shift(2) - kron(sx, id)), 1e-15);
  EXPECT_LE(max_abs(g.phase(1) - kron(id, sz)), 1e-15);
  EXPECT_LE(max_abs(g.fourier() - hadamard_tensor(2)), 1e-15);
  EXPECT_LE(max_abs(g.fourier() * g.shift(3) * g.fourier().adjoint() - g.phase(3)), 1e-12);
}

TEST(States, BasisEnsembles) {
  const auto [e0, e1] = basis_ensembles(hadamard_tensor(1));
  EXPECT_LT(max_abs(e0.average().mat() - maximally_mixed(2).mat()), 1e-12);
  EXPECT_LT(max_abs(e1.average().mat() - maximally_mixed(2).mat()), 1e-12);
  CMatrix plus = CMatrix::Constant(2, 2, 0.5);
  EXPECT_LT(max_abs(e1.items()[0].state.mat() - plus), 1e-12);
  EXPECT_NEAR(holevo_chi(e0), 1.0, 1e-12);
}

TEST(States, FlowerPurification) {
  for (int d : {2, 3}) {
    const PureState psi = flower_purification(d);
    EXPECT_EQ(psi.dims(), (DimList{d, 2, d, 2, d}));
    EXPECT_NEAR(psi.vec().norm(), 1.0, 1e-12);
    const std::vector<int> c{4}, rest{0, 1, 2, 3};
    EXPECT_LT(max_abs(psi.reduce(c).mat() - maximally_mixed(d).mat()), 1e-12);
    EXPECT_NEAR(entropy(psi.reduce(c)), std::log2(d), 1e-10);
    EXPECT_NEAR(entropy(psi.reduce(rest)), std::log2(d), 1e-10);
  }
  // I(AA';BB') = 2 + log d at d = 2
  const DensityOperator r = flower_purification(2).reduce(std::vector<int>{0, 1, 2, 3});
  const std::vector<int> a{0, 1}, b{2, 3};
  EXPECT_NEAR(mutual_information(r, a, b), 3.0, 1e-10);
}

TEST(States, FlowerMatchesDirectSum) {
  const int d = 2;
  const CMatrix u = fourier_unitary(d);
  CVector oracle = CVector::Zero(d * 2 * d * 2 * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < 2; ++j)
      for (int c = 0; c < d; ++c) {
        const Complex amp = j == 0 ? Complex(i == c ? 1.0 : 0.0) : u(c, i);
        oracle(((((i * 2 + j) * d + i) * 2 + j) * d) + c) += amp / std::sqrt(2.0 * d);
      }
  EXPECT_LE((flower_purification(d).vec() - oracle).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(States, FlowerGeneral) {
  const std::vector<CMatrix> id{CMatrix::Identity(3, 3)};
  EXPECT_LE((flower_purification_general(3, id).vec() - flower_purification(3).vec()).cwiseAbs().maxCoeff(), 1e-12);
  Rng rng(4);
  const std::vector<CMatrix> us{haar_unitary(2, rng), haar_unitary(2, rng)};
  const PureState psi = flower_purification_general(2, us);
  EXPECT_EQ(psi.dims(), (DimList{2, 4, 2, 4, 2}));
  EXPECT_NEAR(psi.vec().norm(), 1.0, 1e-12);
  const std::vector<int> c{4};
  EXPECT_LT(max_abs(psi.reduce(c).mat() - maximally_mixed(2).mat()), 1e-12);
  const std::vector<CMatrix> bad{CMatrix::Ones(2, 2)};
  EXPECT_THROW(flower_purification_general(2, bad), Error);
}

TEST(States, SymAntisymProjectors) {
  for (int d : {2, 3}) {
    const auto [ps, pa] = sym_antisym_projectors(d);
    EXPECT_NEAR(ps.trace().real(), d * (d + 1) / 2.0, 1e-12);
    EXPECT_NEAR(pa.trace().real(), d * (d - 1) / 2.0, 1e-12);
    EXPECT_LE(max_abs(ps + pa - CMatrix::Identity(d * d, d * d)), 1e-14);
    EXPECT_LE(max_abs(ps * pa), 1e-14);
    EXPECT_LE(max_abs(swap_operator(d) * pa + pa), 1e-14);
  }
}

TEST(States, Omega) {
  for (int d : {2, 3}) {
    const DensityOperator om = omega_state(d);
    EXPECT_EQ(om.dims(), (DimList{2, d, d}));
    EXPECT_NEAR(om.mat().trace().real(), 1.0, 1e-12);
    const std::vector<int> ab{1, 2}, b{2};
    EXPECT_LT(max_abs(om.reduce(ab).mat() - maximally_mixed(d * d).mat()), 1e-12);
    EXPECT_NEAR(entropy(om.reduce(b)), std::log2(d), 1e-12);
    // spectrum: d^2 eigenvalues 1/d^2, rest zero
    const RVector ev = hermitian_eigenvalues(om.mat());
    int nonzero = 0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      if (ev(k) > 1e-12) {
        ++nonzero;
        EXPECT_NEAR(ev(k), 1.0 / (d * d), 1e-12);
      }
    }
    EXPECT_EQ(nonzero, d * d);
  }
}

TEST(States, RandomSupported) {
  Rng rng(6);
  const auto [ps, pa] = sym_antisym_projectors(2);
  const DensityOperator singlet = random_supported_state(pa, 1, rng);
  EXPECT_LT(max_abs(singlet.mat() - pa), 1e-10);
  const auto [ps3, pa3] = sym_antisym_projectors(3);
  for (int r = 1; r <= 6; ++r) {
    const DensityOperator rho = random_supported_state(ps3, r, rng);
    EXPECT_LT(max_abs(ps3 * rho.mat() * ps3 - rho.mat()), 1e-10);
    const CMatrix f = swap_operator(3);
    EXPECT_LT(max_abs(f * rho.mat() * f.adjoint() - rho.mat()), 1e-10);
  }
  try {
    random_supported_state(pa3, 4, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RankTooLarge);
  }
}

TEST(States, Purify) {
  const PureState p = purify(maximally_mixed(2));
  EXPECT_EQ(p.dims(), (DimList{2, 2}));
  const std::vector<int> zero{0};
  EXPECT_NEAR(entanglement_entropy(p, zero), 1.0, 1e-12);

  CMatrix k0 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  const PureState q = purify(DensityOperator(k0, DimList{2}));
  EXPECT_EQ(q.dims(), (DimList{2, 1}));

  Rng rng(7);
  const DensityOperator rho = random_density(DimList{2, 3}, rng);
  const PureState psi = purify(rho);
  const std::vector<int> keep{0, 1};
  EXPECT_LT(max_abs(psi.reduce(keep).mat() - rho.mat()), 1e-10);
}

TEST(States, Validation) {
  CMatrix bad = CMatrix::Identity(2, 2);
  EXPECT_THROW(DensityOperator(bad, DimList{2}), Error);  // trace 2
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  try {
    DensityOperator(neg, DimList{2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAState);
  }
  EXPECT_THROW(DensityOperator(CMatrix::Identity(4, 4) / 4.0, DimList{2, 3}), Error);
  EXPECT_THROW(PureState(CVector::Ones(2), DimList{2}), Error);
}
