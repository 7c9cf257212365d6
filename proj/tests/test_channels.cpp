#include <gtest/gtest.h>

#include "entlock/entropics.hpp"

using namespace entlock;

namespace {

// Tr_env(V rho V^dag) with rows of V ordered (out, env).
CMatrix stinespring_oracle(const CMatrix& v, const CMatrix& rho, int d_out, int d_env) {
  const CMatrix big = v * rho * v.adjoint();
  CMatrix out = CMatrix::Zero(d_out, d_out);
  for (int o = 0; o < d_out; ++o)
    for (int p = 0; p < d_out; ++p)
      for (int e = 0; e < d_env; ++e) out(o, p) += big(o * d_env + e, p * d_env + e);
  return out;
}

}  // namespace

TEST(Channels, IdentityAndDepolarizing) {
  Rng rng(1);
  const DensityOperator rho = random_density(DimList{3}, rng);
  EXPECT_LT(max_abs(apply(identity_channel(3), rho).mat() - rho.mat()), 1e-14);
  EXPECT_LT(max_abs(apply(completely_depolarizing(3), rho).mat() - maximally_mixed(3).mat()), 1e-14);
}

TEST(Channels, StinespringOracle) {
  Rng rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix v = haar_isometry(3, 2 * 4, rng);
    const KrausChannel ch = channel_from_isometry(v, 2, 4);
    EXPECT_LE(ch.completeness_error(), 1e-9);
    const DensityOperator rho = random_density(DimList{3}, rng);
    EXPECT_LE(max_abs(apply(ch, rho).mat() - stinespring_oracle(v, rho.mat(), 2, 4)), 1e-11);
    EXPECT_LE(max_abs(stinespring_isometry(ch) - v), 1e-14);
  }
}

TEST(Channels, IsometryEdgeCases) {
  Rng rng(3);
  const CMatrix u = haar_unitary(3, rng);
  const KrausChannel ch = channel_from_isometry(u, 3, 1);
  ASSERT_EQ(ch.kraus().size(), 1u);
  EXPECT_LE(max_abs(ch.kraus()[0] - u), 1e-15);
  const KrausChannel trace = channel_from_isometry(haar_isometry(2, 2, rng), 1, 2);
  EXPECT_EQ(trace.d_out(), 1);
  try {
    channel_from_isometry(CMatrix::Ones(4, 2), 2, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotIsometry);
  }
}

TEST(Channels, NotCptp) {
  try {
    KrausChannel({CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCptp);
  }
}

TEST(Channels, ApplyToFactor) {
  const PureState psi = flower_purification(2);
  const DensityOperator same = apply_to_factor(identity_channel(2), psi, 4);
  EXPECT_LT(max_abs(same.mat() - psi.density().mat()), 1e-14);

  const DensityOperator replaced = apply_to_factor(replacement_channel(2, 2), psi, 4);
  const std::vector<int> keep{0, 1, 2, 3};
  CMatrix zero = CMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  EXPECT_LT(max_abs(replaced.mat() - kron(psi.reduce(keep).mat(), zero)), 1e-14);

  Rng rng(4);
  const DensityOperator rho = random_density(DimList{2, 3, 2}, rng);
  const KrausChannel ch = random_channel(3, 4, 2, rng);
  const DensityOperator out = apply_to_factor(ch, rho, 1);
  EXPECT_EQ(out.dims(), (DimList{2, 4, 2}));
  const std::vector<int> untouched{0, 2};
  EXPECT_LT(max_abs(out.reduce(untouched).mat() - rho.reduce(untouched).mat()), 1e-11);
  // permuting the factor to the front and applying there agrees
  const std::vector<int> perm{1, 0, 2};
  const DensityOperator moved =
      DensityOperator::trusted(permute_systems(rho.mat(), rho.dims(), perm), DimList{3, 2, 2});
  const DensityOperator out2 = apply_to_factor(ch, moved, 0);
  EXPECT_LT(max_abs(permute_systems(out2.mat(), out2.dims(), perm) - out.mat()), 1e-12);
  EXPECT_THROW(apply_to_factor(ch, rho, 0), Error);
}

TEST(Channels, Dephasing) {
  CMatrix plus = CMatrix::Constant(2, 2, 0.5);
  const DensityOperator out = apply(dephasing_channel(CMatrix::Identity(2, 2)), DensityOperator(plus, DimList{2}));
  EXPECT_LT(max_abs(out.mat() - maximally_mixed(2).mat()), 1e-14);

  Rng rng(5);
  for (int d : {2, 3, 4}) {
    const DensityOperator phi = random_density(DimList{d}, rng);
    const KrausChannel m0 = dephasing_channel(CMatrix::Identity(d, d));
    const KrausChannel m1 = dephasing_channel(fourier_unitary(d));
    CMatrix avg_x = CMatrix::Zero(d, d), avg_z = CMatrix::Zero(d, d);
    CMatrix xa = CMatrix::Identity(d, d), zb = CMatrix::Identity(d, d);
    for (int a = 0; a < d; ++a) {
      avg_x += xa * phi.mat() * xa.adjoint() / static_cast<double>(d);
      avg_z += zb * phi.mat() * zb.adjoint() / static_cast<double>(d);
      xa = weyl_x(d) * xa;
      zb = weyl_z(d) * zb;
    }
    EXPECT_LE(max_abs(apply(m1, phi).mat() - avg_x), 1e-11);
    EXPECT_LE(max_abs(apply(m0, phi).mat() - avg_z), 1e-11);
    EXPECT_LE(max_abs(apply(m1, apply(m1, phi)).mat() - apply(m1, phi).mat()), 1e-11);
    EXPECT_LE(max_abs(apply(m0, apply(m0, phi)).mat() - apply(m0, phi).mat()), 1e-11);
  }
}

TEST(Channels, RandomChannel) {
  Rng rng(6);
  const KrausChannel u = random_channel(3, 3, 1, rng);
  ASSERT_EQ(u.kraus().size(), 1u);
  EXPECT_LE(max_abs(u.kraus()[0].adjoint() * u.kraus()[0] - CMatrix::Identity(3, 3)), 1e-10);
  CMatrix avg = CMatrix::Zero(2, 2);
  for (int s = 0; s < 1000; ++s) {
    const KrausChannel ch = random_channel(2, 2, 4, rng);
    EXPECT_LE(ch.completeness_error(), 1e-9);
    avg += apply(ch, maximally_mixed(2)).mat() / 1000.0;
  }
  EXPECT_LE(max_abs(avg - maximally_mixed(2).mat()), 0.02);
  try {
    random_channel(4, 1, 2, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadShape);
  }
}

TEST(Channels, Compose) {
  Rng rng(7);
  const KrausChannel a = random_channel(2, 3, 2, rng), b = random_channel(3, 2, 3, rng);
  const DensityOperator rho = random_density(DimList{2}, rng);
  EXPECT_LE(max_abs(apply(compose(b, a), rho).mat() - apply(b, apply(a, rho)).mat()), 1e-11);
  EXPECT_THROW(compose(a, a), Error);
}

TEST(Channels, WeylTwist) {
  Rng rng(8);
  const AbelianGroup g = AbelianGroup::zd(3);
  const DensityOperator rho = random_density(DimList{3, 2}, rng);
  EXPECT_LT(max_abs(weyl_twist(rho, 0, 0, g).mat() - rho.mat()), 1e-14);
  CMatrix avg = CMatrix::Zero(6, 6);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const DensityOperator t = weyl_twist(rho, a, b, g);
      EXPECT_NEAR(t.mat().trace().real(), 1.0, 1e-12);
      avg += t.mat() / 9.0;
    }
  const std::vector<int> two{1};
  EXPECT_LE(max_abs(avg - kron(maximally_mixed(3).mat(), rho.reduce(two).mat())), 1e-11);
  const DensityOperator wrong = random_density(DimList{2, 3}, rng);
  try {
    weyl_twist(wrong, 1, 1, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimMismatch);
  }
}
