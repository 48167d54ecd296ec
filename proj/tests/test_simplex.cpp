#include "gewit/ppt.hpp"
#include "gewit/simplex.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace gewit;

TEST(SimplexOperator, Examples) {
  EXPECT_NEAR(hs_distance(simplex_operator({0, 0, 0}), BipartiteOperator::maximally_mixed(3, 3)), 0.0, 1e-15);
  EXPECT_NEAR(hs_distance(simplex_operator({1, 0, 0}), bell_projector(3, 0, 0).op()), 0.0, 1e-15);
  EXPECT_NEAR(hs_distance(simplex_operator({1.0 / 6.0, -5.0 / 21.0, 0.0}), horodecki_state(HorodeckiParam(2.5)).op()),
              0.0, 1e-12);
}

TEST(SimplexOperator, MatchesKetConstruction) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const SimplexParams p{u(rng), u(rng), u(rng)};
    EXPECT_NEAR((simplex_operator(p).entries() - oracle::simplex(p.alpha, p.beta, p.gamma)).norm(), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(simplex_operator(p).trace() - complex(1.0)), 0.0, 1e-14);
  }
}

TEST(SimplexSpectrum, Examples) {
  auto flat = [](const SimplexParams& p) {
    std::vector<double> v;
    for (const auto& g : simplex_spectrum(p))
      for (int k = 0; k < g.multiplicity; ++k) v.push_back(g.value);
    std::sort(v.begin(), v.end());
    return v;
  };
  for (double v : flat({0, 0, 0})) EXPECT_NEAR(v, 1.0 / 9.0, 1e-15);
  auto s = flat({1, 0, 0});
  EXPECT_NEAR(s.back(), 1.0, 1e-15);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(s[i], 0.0, 1e-15);
  s = flat({0.5, 0, 0});
  EXPECT_NEAR(s.back(), 0.5 + 0.5 / 9.0, 1e-15);
  EXPECT_NEAR(s.back(), 0.5556, 1e-4);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(s[i], 0.0556, 1e-4);
}

TEST(SimplexSpectrum, MatchesNumericSpectrum) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const SimplexParams p{u(rng), u(rng), u(rng)};
    std::vector<double> closed;
    for (const auto& g : simplex_spectrum(p))
      for (int k = 0; k < g.multiplicity; ++k) closed.push_back(g.value);
    std::sort(closed.begin(), closed.end());
    const auto numeric = hermitian_spectrum(BipartiteOperator(3, 3, oracle::simplex(p.alpha, p.beta, p.gamma)));
    for (int k = 0; k < 9; ++k) ASSERT_NEAR(closed[k], numeric[k], 1e-12);
    EXPECT_NEAR(simplex_min_eigenvalue(p), numeric.front(), 1e-12);
  }
}

TEST(SimplexState, ValidityFlag) {
  const auto good = simplex_state({0.5, 0.0, 0.0});
  EXPECT_TRUE(good.valid);
  EXPECT_NO_THROW(good.density());
  const auto bad = simplex_state({-0.5, 0.0, 0.0});
  EXPECT_FALSE(bad.valid);
  EXPECT_LT(bad.min_eigenvalue, 0.0);
  EXPECT_THROW(bad.density(), std::invalid_argument);
  EXPECT_FALSE(simplex_valid({1.0, 1.0, 1.0}));
}

TEST(SimplexState, BellDiagonal) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const auto ex = weyl_expand(simplex_operator({u(rng), u(rng), u(rng)}));
    for (const auto& e : ex.significant()) EXPECT_EQ(e.second, e.first.lemma_partner());
  }
}

TEST(Horodecki, ParameterRange) {
  EXPECT_THROW(HorodeckiParam(-0.01), std::invalid_argument);
  EXPECT_THROW(HorodeckiParam(5.01), std::invalid_argument);
  EXPECT_THROW(HorodeckiParam(std::nan("")), std::invalid_argument);
  EXPECT_NO_THROW(HorodeckiParam(0.0));
  EXPECT_NO_THROW(HorodeckiParam(5.0));
}

TEST(Horodecki, MatchesKetConstruction) {
  for (int i = 0; i <= 10; ++i) {
    const double b = 0.5 * i;
    const auto rho = horodecki_state(HorodeckiParam(b));
    EXPECT_NEAR((rho.op().entries() - oracle::horodecki(b)).norm(), 0.0, 1e-15);
  }
}

TEST(Horodecki, PtExamples) {
  EXPECT_FALSE(classify_ppt(horodecki_state(HorodeckiParam(2.5))).npt);
  EXPECT_GE(classify_ppt(horodecki_state(HorodeckiParam(2.5))).min_pt_eigenvalue, 0.0);
  EXPECT_TRUE(classify_ppt(horodecki_state(HorodeckiParam(0.0))).npt);
  EXPECT_TRUE(classify_ppt(horodecki_state(HorodeckiParam(5.0))).npt);
}

TEST(Horodecki, PtSignChangesAtOneAndFour) {
  // Sign with a roundoff floor; the PSD gate (1e-10) would shift the
  // crossing by a few 1e-9.
  auto pt_min = [](double b) {
    return min_eigenvalue(BipartiteOperator(3, 3, oracle::pt2(oracle::horodecki(b), 3, 3)));
  };
  auto locate = [&](double lo, double hi) {
    const bool lo_neg = pt_min(lo) < -1e-13;
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      ((pt_min(mid) < -1e-13) == lo_neg ? lo : hi) = mid;
    }
    return std::pair{lo, hi};
  };
  const auto [l1, h1] = locate(0.5, 1.5);
  EXPECT_LE(l1, 1.0 + 1e-9);
  EXPECT_GE(h1, 1.0 - 1e-9);
  EXPECT_NEAR(l1, 1.0, 1e-8);
  const auto [l4, h4] = locate(3.5, 4.5);
  EXPECT_NEAR(l4, 4.0, 1e-8);
  EXPECT_NEAR(h4, 4.0, 1e-8);
}

TEST(Horodecki, ToSimplexExamples) {
  auto check = [](double b, double a, double be, double g) {
    const auto p = horodecki_to_simplex(HorodeckiParam(b));
    EXPECT_NEAR(p.alpha, a, 1e-15);
    EXPECT_NEAR(p.beta, be, 1e-15);
    EXPECT_NEAR(p.gamma, g, 1e-15);
  };
  check(2.5, 1.0 / 6.0, -5.0 / 21.0, 0.0);
  check(3.0, 1.0 / 7.0, -2.0 / 7.0, -1.0 / 7.0);
  check(4.0, 2.0 / 21.0, -8.0 / 21.0, -3.0 / 7.0);
}

TEST(Horodecki, EmbeddingIdentity) {
  for (int i = 0; i < 50; ++i) {
    const HorodeckiParam b(5.0 * i / 49.0);
    const auto p = horodecki_to_simplex(b);
    EXPECT_LE((oracle::horodecki(b.value()) - oracle::simplex(p.alpha, p.beta, p.gamma)).norm(), 1e-12);
    EXPECT_NEAR(horodecki_b_for_gamma(p.gamma), b.value(), 1e-14);
  }
}

TEST(Horodecki, SwappingQutritsMirrorsB) {
  // Exchanging the factors maps rho_b to rho_{5-b}.
  for (double b : {0.0, 1.0, 2.2, 3.5}) {
    const Matrix r = oracle::horodecki(b);
    Matrix swapped(9, 9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) swapped(j * 3 + i, l * 3 + k) = r(i * 3 + j, k * 3 + l);
    EXPECT_NEAR((swapped - oracle::horodecki(5.0 - b)).norm(), 0.0, 1e-15);
  }
}

TEST(LineState, Examples) {
  const auto rho = horodecki_state(HorodeckiParam(3.5));
  EXPECT_NEAR(hs_distance(line_state(rho, 0.0).op(), BipartiteOperator::maximally_mixed(3, 3)), 0.0, 1e-15);
  EXPECT_NEAR(hs_distance(line_state(rho, 1.0).op(), rho.op()), 0.0, 1e-15);
  EXPECT_THROW(line_state(rho, 1.5), std::invalid_argument);
  EXPECT_THROW(line_state(rho, -0.1), std::invalid_argument);
  // The line from a simplex state stays in the family with scaled weights.
  const auto half = line_state(DensityMatrix(simplex_operator({0.2, -0.1, 0.3})), 0.5);
  EXPECT_NEAR(hs_distance(half.op(), simplex_operator({0.1, -0.05, 0.15})), 0.0, 1e-15);
}

TEST(GammaSlicePoint, Examples) {
  auto [a3, b3] = slice_point_for_gamma(-1.0 / 7.0);
  EXPECT_NEAR(a3, 1.0 / 7.0, 1e-15);
  EXPECT_NEAR(b3, -2.0 / 7.0, 1e-15);
  auto [a4, b4] = gamma_slice_point(HorodeckiParam(4.0));
  EXPECT_NEAR(a4, 2.0 / 21.0, 1e-15);
  EXPECT_NEAR(b4, -8.0 / 21.0, 1e-15);
  auto [a, b] = slice_point_for_gamma(-0.3);
  EXPECT_NEAR(a, 0.11667, 1e-5);
  EXPECT_NEAR(b, -0.33810, 1e-5);
  // Agrees with the embedding inside the window.
  for (double bb : {3.1, 3.5, 3.9, 4.0}) {
    const auto [sa, sb] = gamma_slice_point(HorodeckiParam(bb));
    const auto p = horodecki_to_simplex(HorodeckiParam(bb));
    EXPECT_NEAR(sa, p.alpha, 1e-15);
    EXPECT_NEAR(sb, p.beta, 1e-15);
  }
  EXPECT_THROW(gamma_slice_point(HorodeckiParam(3.0)), std::invalid_argument);
  EXPECT_THROW(gamma_slice_point(HorodeckiParam(2.0)), std::invalid_argument);
  EXPECT_THROW(gamma_slice_point(HorodeckiParam(4.5)), std::invalid_argument);
}
