#include "gewit/weyl.hpp"
#include "gewit/witness.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace gewit;

TEST(WeylIndex, ReducesModD) {
  const WeylIndex i(-1, 1, 3);
  EXPECT_EQ(i.n(), 2u);
  EXPECT_EQ(i.m(), 1u);
  EXPECT_EQ(WeylIndex(7, -4, 3), WeylIndex(1, 2, 3));
  EXPECT_EQ(WeylIndex(1, 2, 3).lemma_partner(), WeylIndex(2, 2, 3));
  EXPECT_EQ(WeylIndex(2, 1, 3).flat(), 7u);
  EXPECT_TRUE(WeylIndex(3, 3, 3).is_identity());
  EXPECT_THROW(WeylIndex(0, 0, 1), std::invalid_argument);
}

TEST(Weyl, Examples) {
  EXPECT_EQ((weyl(3, 0, 0) - Matrix::Identity(3, 3)).norm(), 0.0);
  const Matrix shift = weyl(3, 0, 1);
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(shift(k, j), complex(j == (k + 1) % 3 ? 1.0 : 0.0));
  const Matrix u = weyl(3, 1, 1);
  EXPECT_NEAR(std::abs((u.adjoint() * u).trace() - complex(3.0)), 0.0, 1e-14);
}

TEST(Weyl, MatchesDefinitionAndIsUnitary) {
  for (long d = 2; d <= 5; ++d)
    for (long n = 0; n < d; ++n)
      for (long m = 0; m < d; ++m) {
        const Matrix u = weyl(d, n, m);
        EXPECT_NEAR((u - oracle::weyl(d, n, m)).norm(), 0.0, 1e-14);
        EXPECT_NEAR((u * u.adjoint() - Matrix::Identity(d, d)).norm(), 0.0, 1e-14);
      }
}

TEST(Weyl, TraceOrthogonality) {
  for (std::size_t d = 2; d <= 5; ++d) {
    const auto basis = weyl_basis(d);
    ASSERT_EQ(basis.size(), d * d);
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const complex ip = (basis[a].adjoint() * basis[b]).trace();
        EXPECT_NEAR(std::abs(ip - complex(a == b ? double(d) : 0.0)), 0.0, 1e-13) << d << " " << a << " " << b;
      }
  }
}

TEST(Weyl, CompositionPhase) {
  // U_nm U_kl = w^{mk} U_{n+k, m+l}.
  const long d = 3;
  int pairs = 0;
  for (long n = 0; n < d; ++n)
    for (long m = 0; m < d; ++m)
      for (long k = 0; k < d; ++k)
        for (long l = 0; l < d; ++l) {
          const Matrix prod = weyl(d, n, m) * weyl(d, k, l);
          const Matrix target = weyl(d, n + k, m + l);
          const complex phase = (target.adjoint() * prod).trace() / double(d);
          EXPECT_NEAR(std::abs(phase), 1.0, 1e-14);
          EXPECT_NEAR((prod - phase * target).norm(), 0.0, 1e-14);
          EXPECT_NEAR(std::abs(phase - oracle::omega(m * k, d)), 0.0, 1e-14);
          ++pairs;
        }
  EXPECT_EQ(pairs, 81);
}

TEST(MaxEntangled, Examples) {
  const Vector phi = max_entangled(3);
  ASSERT_EQ(phi.size(), 9);
  for (int i = 0; i < 9; ++i) {
    const double expect = (i == 0 || i == 4 || i == 8) ? 1.0 / std::sqrt(3.0) : 0.0;
    EXPECT_NEAR(std::abs(phi(i) - complex(expect)), 0.0, 1e-15);
  }
  EXPECT_NEAR(phi.squaredNorm(), 1.0, 1e-15);
  const BipartiteOperator p(3, 3, phi * phi.adjoint());
  EXPECT_NEAR((partial_trace_second(p) - Matrix::Identity(3, 3) / 3.0).norm(), 0.0, 1e-15);
  EXPECT_NEAR((partial_trace_first(p) - Matrix::Identity(3, 3) / 3.0).norm(), 0.0, 1e-15);
}

TEST(PartialTrace, ProductOperator) {
  std::mt19937_64 rng(2);
  const Matrix a = oracle::random_density(3, rng);
  const Matrix b = oracle::random_density(3, rng);
  EXPECT_NEAR((partial_trace_second(tensor(a, b)) - a).norm(), 0.0, 1e-14);
  EXPECT_NEAR((partial_trace_first(tensor(a, b)) - b).norm(), 0.0, 1e-14);
}

TEST(BellProjector, MatchesKetConstruction) {
  for (long n = 0; n < 3; ++n)
    for (long m = 0; m < 3; ++m)
      EXPECT_NEAR((bell_projector(3, n, m).op().entries() - oracle::bell(3, n, m)).norm(), 0.0, 1e-14);
  const Vector phi = max_entangled(3);
  EXPECT_NEAR((bell_projector(3, 0, 0).op().entries() - phi * phi.adjoint()).norm(), 0.0, 1e-15);
}

TEST(BellProjector, OrthogonalAndComplete) {
  for (std::size_t d : {2u, 3u, 4u}) {
    auto sum = BipartiteOperator::zero(d, d);
    for (std::size_t a = 0; a < d * d; ++a) {
      const auto pa = bell_projector(d, WeylIndex(long(a / d), long(a % d), d));
      sum += pa.op();
      for (std::size_t b = 0; b < d * d; ++b) {
        const auto pb = bell_projector(d, WeylIndex(long(b / d), long(b % d), d));
        EXPECT_NEAR(std::abs(hs_inner(pa.op(), pb.op()) - complex(a == b ? 1.0 : 0.0)), 0.0, 1e-12);
      }
    }
    EXPECT_NEAR(hs_distance(sum, BipartiteOperator::identity(d, d)), 0.0, 1e-12);
  }
  EXPECT_NEAR(std::abs(hs_inner(bell_projector(3, 0, 0).op(), bell_projector(3, 1, 0).op())), 0.0, 1e-15);
}

TEST(WeylExpand, Identity) {
  const auto ex = weyl_expand(BipartiteOperator::identity(3, 3));
  const auto sig = ex.significant();
  ASSERT_EQ(sig.size(), 1u);
  EXPECT_TRUE(sig[0].first.is_identity() && sig[0].second.is_identity());
  EXPECT_NEAR(std::abs(sig[0].value - complex(1.0)), 0.0, 1e-15);
}

TEST(WeylExpand, BellProjector) {
  const auto ex = weyl_expand(bell_projector(3, 0, 0).op());
  const auto sig = ex.significant();
  EXPECT_EQ(sig.size(), 9u);
  for (const auto& e : sig) {
    EXPECT_EQ(e.second, e.first.lemma_partner());
    EXPECT_NEAR(std::abs(e.value - complex(1.0 / 9.0)), 0.0, 1e-15);
  }
}

TEST(WeylExpand, RegionWitnessInLemmaForm) {
  const auto ex = weyl_expand(region_witnesses().c_i.op);
  const double a = 1.0 / (6.0 * std::numbers::sqrt2);
  EXPECT_NEAR(ex.identity_coeff().real() / 2.0, a, 1e-15);
  int unit = 0;
  for (const auto& e : ex.significant()) {
    EXPECT_EQ(e.second, e.first.lemma_partner());
    if (!e.first.is_identity()) {
      EXPECT_NEAR(std::abs(e.value) / a, 1.0, 1e-13);
      ++unit;
    }
  }
  EXPECT_EQ(unit, 8);
}

TEST(WeylExpand, RoundTripOnRandomHermitian) {
  std::mt19937_64 rng(17);
  for (long d : {2, 3, 4}) {
    for (int t = 0; t < 10; ++t) {
      const BipartiteOperator x(d, d, oracle::random_hermitian(d * d, rng));
      const auto ex = weyl_expand(x);
      EXPECT_LE(hs_distance(ex.reconstruct(), x), 1e-12);
      // U_nm^dagger = w^{nm} U_{-n,-m}, so for Hermitian x the coefficient at
      // (-n,-m; -l,-k) is conj(c) times w^{nm + lk}.
      for (long n = 0; n < d; ++n)
        for (long m = 0; m < d; ++m)
          for (long l = 0; l < d; ++l)
            for (long k = 0; k < d; ++k) {
              const complex c = ex.coeff(WeylIndex(n, m, d), WeylIndex(l, k, d));
              const complex cd = ex.coeff(WeylIndex(-n, -m, d), WeylIndex(-l, -k, d));
              EXPECT_NEAR(std::abs(cd - std::conj(c) * oracle::omega(n * m + l * k, d)), 0.0, 1e-13);
            }
    }
  }
  EXPECT_THROW(weyl_expand(BipartiteOperator::identity(2, 3)), std::invalid_argument);
}
