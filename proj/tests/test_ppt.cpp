#include "gewit/ppt.hpp"
#include "gewit/simplex.hpp"
#include "gewit/witness.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace gewit;

TEST(ClassifyPpt, Examples) {
  EXPECT_FALSE(classify_ppt(DensityMatrix::maximally_mixed(3, 3)).npt);
  EXPECT_STREQ(classify_ppt(DensityMatrix::maximally_mixed(3, 3)).label(), "PPT");
  EXPECT_TRUE(classify_ppt(horodecki_state(HorodeckiParam(0.5))).npt);
  EXPECT_STREQ(classify_ppt(horodecki_state(HorodeckiParam(0.5))).label(), "NPT");
  EXPECT_FALSE(classify_ppt(horodecki_state(HorodeckiParam(3.5))).npt);
}

TEST(ClassifyPpt, AgreesWithEigenvalueSign) {
  for (int i = 0; i <= 20; ++i) {
    const double b = 0.25 * i;
    const auto v = classify_ppt(horodecki_state(HorodeckiParam(b)));
    const double lo = min_eigenvalue(BipartiteOperator(3, 3, oracle::pt2(oracle::horodecki(b), 3, 3)));
    EXPECT_NEAR(v.min_pt_eigenvalue, lo, 1e-14);
    EXPECT_EQ(v.npt, lo < -v.tolerance) << b;
    EXPECT_EQ(v.npt, b < 1.0 || b > 4.0) << b;
  }
}

TEST(Projections, DensityProjection) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    const BipartiteOperator h(3, 3, oracle::random_hermitian(9, rng));
    const auto p = project_density(h);
    EXPECT_GE(min_eigenvalue(p), -1e-12);
    EXPECT_NEAR(p.trace().real(), 1.0, 1e-12);
    // Fixed point and optimality against random density matrices.
    EXPECT_NEAR(hs_distance(project_density(p), p), 0.0, 1e-12);
    for (int k = 0; k < 5; ++k) {
      const BipartiteOperator other(3, 3, oracle::random_density(9, rng));
      EXPECT_LE(hs_distance(p, h), hs_distance(other, h) + 1e-12);
    }
  }
}

TEST(NearestPpt, RegionExamples) {
  const auto r1 = nearest_ppt(DensityMatrix(simplex_operator({0.5, 0.0, 0.0})));
  EXPECT_TRUE(r1.converged);
  EXPECT_LE(hs_distance(r1.state.op(), simplex_operator({0.25, 0.0, 0.0})), 1e-6);
  EXPECT_NEAR(r1.distance, std::sqrt(2.0) / 6.0, 1e-6);
  const auto r2 = nearest_ppt(DensityMatrix(simplex_operator({0.0, 0.8, 0.0})));
  EXPECT_TRUE(r2.converged);
  EXPECT_LE(hs_distance(r2.state.op(), simplex_operator({1.0 / 12.0, 7.0 / 15.0, 0.0})), 1e-6);
}

TEST(NearestPpt, PptInputIsFixed) {
  const auto rho = horodecki_state(HorodeckiParam(2.5));
  const auto r = nearest_ppt(rho);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(hs_distance(r.state.op(), rho.op()), 0.0);
}

TEST(NearestPpt, OutputIsPptAndNoFartherThanAnalytic) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-0.5, 1.0);
  int done = 0;
  while (done < 10) {
    const double a = u(rng);
    const double b = u(rng);
    if (!simplex_valid({a, b, 0.0})) continue;
    const DensityMatrix rho(simplex_operator({a, b, 0.0}));
    if (!classify_ppt(rho).npt) continue;
    const auto r = nearest_ppt(rho);
    EXPECT_TRUE(r.converged);
    EXPECT_GE(r.state.min_eigenvalue(), -kPsdTol);
    EXPECT_GE(r.min_pt_eigenvalue, -kPsdTol);
    const auto n = nearest_separable_gamma0(a, b);
    EXPECT_LE(r.distance, n.distance + 1e-9);
    EXPECT_LE(hs_distance(r.state.op(), simplex_operator(n.nearest)), 1e-6);
    ++done;
  }
}

TEST(NearestPpt, GenericStateConverges) {
  // Off the analytic slice: only membership and optimality against PPT candidates.
  const DensityMatrix rho(simplex_operator({0.55, 0.1, 0.2}));
  ASSERT_TRUE(classify_ppt(rho).npt);
  const auto r = nearest_ppt(rho);
  EXPECT_TRUE(r.converged);
  EXPECT_GE(r.min_pt_eigenvalue, -kPsdTol);
  EXPECT_LE(r.distance, hs_distance(rho.op(), BipartiteOperator::maximally_mixed(3, 3)));
  const DensityMatrix h0 = horodecki_state(HorodeckiParam(0.3));
  const auto rh = nearest_ppt(h0);
  EXPECT_TRUE(rh.converged);
  EXPECT_LE(rh.distance, hs_distance(h0.op(), horodecki_state(HorodeckiParam(1.0)).op()) + 1e-9);
}

TEST(Sampler, PureProductStates) {
  const auto states = sample_product_state(3, {42, 200, 1});
  ASSERT_EQ(states.size(), 200u);
  for (const auto& s : states) {
    EXPECT_FALSE(classify_ppt(s).npt);
    EXPECT_GE(classify_ppt(s).min_pt_eigenvalue, -1e-12);
    const Matrix r1 = partial_trace_second(s.op());
    EXPECT_NEAR((r1 * r1).trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(hs_norm(s.op()), 1.0, 1e-12);
  }
}

TEST(Sampler, MixturesArePpt) {
  const auto states = sample_product_state(3, {7, 100, 4});
  for (const auto& s : states) {
    EXPECT_FALSE(classify_ppt(s).npt);
    EXPECT_LT(hs_norm(s.op()), 1.0);
  }
}

TEST(Sampler, DeterministicAndExtensible) {
  ProductStateSampler a(3, {5, 3000, 2});
  ProductStateSampler b(3, {5, 5000, 2});
  std::vector<SeparableSample> first;
  while (!a.done()) first.push_back(a.next());
  for (std::size_t i = 0; i < first.size(); ++i) {
    const auto s = b.next();
    ASSERT_EQ(s.terms.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_EQ(s.terms[k].weight, first[i].terms[k].weight);
      EXPECT_EQ((s.terms[k].a - first[i].terms[k].a).norm(), 0.0);
      EXPECT_EQ((s.terms[k].b - first[i].terms[k].b).norm(), 0.0);
    }
  }
  // Random access replays the same draws.
  EXPECT_EQ((b.at(2500).terms[1].b - first[2500].terms[1].b).norm(), 0.0);
  EXPECT_EQ((b.at(17).terms[0].a - first[17].terms[0].a).norm(), 0.0);
  // Different seeds differ.
  ProductStateSampler c(3, {6, 10, 2});
  EXPECT_GT((c.at(0).terms[0].a - first[0].terms[0].a).norm(), 0.0);
  EXPECT_THROW(ProductStateSampler(3, {1, 0, 1}), std::invalid_argument);
  EXPECT_THROW(ProductStateSampler(3, {1, 10, 0}), std::invalid_argument);
}

TEST(Sampler, RegionWitnessNonnegativeOnSamples) {
  const auto rw = region_witnesses();
  for (const auto& s : sample_product_state(3, {9, 2000, 1})) {
    EXPECT_GE(rw.c_i.expectation(s.op()), -1e-12);
    EXPECT_GE(rw.c_ii.expectation(s.op()), -1e-12);
  }
}

TEST(SeparableProbe, IdentityGivesOne) {
  const auto p = min_separable_expectation(BipartiteOperator::identity(3, 3), {1, 500, 1});
  EXPECT_NEAR(p.minimum, 1.0, 1e-12);
  EXPECT_EQ(p.samples, 500u);
}

TEST(SeparableProbe, CertifiedWitnessSafe) {
  const auto p = min_separable_expectation(region_witnesses().c_i.op, {1, 100000, 1}, 4);
  EXPECT_GE(p.minimum, -1e-9);
  EXPECT_LT(p.minimum, 1e-3);  // refinement reaches the touching product states
}

TEST(SeparableProbe, MonotoneInSampleCount) {
  const auto w = c_gamma_lambda(std::sqrt(5.0) / 7.0, 0.5).op;
  double prev = 1e300;
  for (std::size_t n : {10u, 100u, 1000u, 5000u}) {
    const auto p = min_separable_expectation(w, {3, n, 1}, 2);
    EXPECT_LE(p.minimum, prev);
    prev = p.minimum;
  }
}

TEST(SeparableProbe, FindsNonWitness) {
  // P00 - 1/2 is negative on product states orthogonal to phi+, e.g. |01>.
  const auto w = bell_projector(3, 0, 0).op() - 0.5 * BipartiteOperator::identity(3, 3);
  const auto p = min_separable_expectation(w, {1, 200, 1}, 4);
  EXPECT_LT(p.minimum, -0.45);
  EXPECT_GE(p.minimum, -0.5 - 1e-12);  // the true minimum over product states
  // A product state reaching it: its expectation is the probe minimum.
  const Vector ab = tensor(Vector(p.a / p.a.norm()), Vector(p.b / p.b.norm()));
  EXPECT_NEAR((ab.adjoint() * w.entries() * ab)(0, 0).real(), p.minimum, 1e-12);
}

TEST(SeparableProbe, RejectsNonHermitian) {
  Matrix m = Matrix::Identity(9, 9);
  m(0, 1) = 0.5;
  EXPECT_THROW(min_separable_expectation(BipartiteOperator(3, 3, m), {1, 10, 1}), std::invalid_argument);
}
