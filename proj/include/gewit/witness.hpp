// witness.hpp: geometric entanglement witnesses and their certification.
//
// A geometric witness built from a reference state s and a target state r is
//   C = s - r - <s, s - r> 1,
// optionally divided by ||s - r||. Its hyperplane passes through s, and
// <r, C> = -||s - r||^2 (or -||s - r|| when normalized).
//
// Certification uses the Weyl-product criterion: an operator of the form
//   a ((d-1) 1 + sum_nm c_nm U_nm (x) U_{-n,m}),  a > 0,
// has nonnegative expectation on every separable state when all |c_nm| <= 1.

#pragma once

#include "gewit/operator.hpp"
#include "gewit/simplex.hpp"
#include "gewit/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gewit {

struct GeometricWitness {
  BipartiteOperator op;
  BipartiteOperator reference;  // state on the hyperplane
  BipartiteOperator target;     // state on the negative side
  double normalization = 1.0;   // ||reference - target|| when normalized, else 1

  double expectation(const BipartiteOperator& state) const { return hs_inner(state, op).real(); }
};

inline GeometricWitness geometric_witness(const BipartiteOperator& sigma, const BipartiteOperator& rho,
                                          bool normalize) {
  sigma.require_same_shape(rho, "geometric_witness");
  const BipartiteOperator diff = sigma - rho;
  const double dist = hs_norm(diff);
  if (dist < 1e-14) throw std::invalid_argument("geometric_witness: states coincide, no separating hyperplane");
  auto op = diff - hs_inner(sigma, diff) * BipartiteOperator::identity(sigma.dim_a(), sigma.dim_b());
  double scale = 1.0;
  if (normalize) {
    scale = dist;
    op *= complex(1.0 / dist, 0.0);
  }
  // The construction is Hermitian in exact arithmetic; drop rounding noise.
  Matrix herm = 0.5 * (op.entries() + op.entries().adjoint());
  return {BipartiteOperator(sigma.dim_a(), sigma.dim_b(), std::move(herm)), sigma, rho, scale};
}

inline GeometricWitness geometric_witness(const DensityMatrix& sigma, const DensityMatrix& rho, bool normalize) {
  return geometric_witness(sigma.op(), rho.op(), normalize);
}

// ---------------------------------------------------------------------------
// Certification

struct WitnessCertificate {
  std::size_t d = 0;
  bool in_lemma_form = false;
  double a = 0.0;
  /// c_nm in flat order n*d + m; entry 0 (the identity index) is unused and zero.
  std::vector<complex> c_table;
  double max_abs_c = 0.0;
  bool certified = false;
  /// Largest modulus among coefficients that do not fit the Weyl-product form.
  double max_off_form = 0.0;
};

inline constexpr double kCertifyCTol = 1e-12;

inline WitnessCertificate certify_lemma1(const BipartiteOperator& w, double zero_threshold = WeylExpansion::kZeroThreshold) {
  require_hermitian(w, kPsdTol, "certify_lemma1");
  if (w.dim_a() != w.dim_b()) throw std::invalid_argument("certify_lemma1: requires a d x d bipartite operator");
  const std::size_t d = w.dim_a();
  const WeylExpansion ex = weyl_expand(w);

  WitnessCertificate cert;
  cert.d = d;
  cert.c_table.assign(d * d, complex{});

  for (std::size_t a = 0; a < d * d; ++a) {
    const WeylIndex first(static_cast<long>(a / d), static_cast<long>(a % d), d);
    for (std::size_t b = 0; b < d * d; ++b) {
      if (a == 0 && b == 0) continue;
      const WeylIndex second(static_cast<long>(b / d), static_cast<long>(b % d), d);
      const bool on_form = !first.is_identity() && second == first.lemma_partner();
      if (!on_form) cert.max_off_form = std::max(cert.max_off_form, std::abs(ex.coeff(first, second)));
    }
  }

  const complex identity = ex.identity_coeff();
  const bool positive_identity = identity.real() > zero_threshold && std::abs(identity.imag()) <= zero_threshold;
  cert.in_lemma_form = cert.max_off_form <= zero_threshold && positive_identity;
  if (!positive_identity) return cert;

  cert.a = identity.real() / static_cast<double>(d - 1);
  for (std::size_t a = 1; a < d * d; ++a) {
    const WeylIndex first(static_cast<long>(a / d), static_cast<long>(a % d), d);
    cert.c_table[a] = ex.coeff(first, first.lemma_partner()) / cert.a;
    cert.max_abs_c = std::max(cert.max_abs_c, std::abs(cert.c_table[a]));
  }
  cert.certified = cert.in_lemma_form && cert.max_abs_c <= 1.0 + kCertifyCTol;
  return cert;
}

inline WitnessCertificate certify_lemma1(const GeometricWitness& w) { return certify_lemma1(w.op); }

// ---------------------------------------------------------------------------
// Two-qutrit Weyl sums

/// U_1 = sum over m in {1,2}, n in {0,1,2} of U_nm (x) U_{-n,m}.
inline BipartiteOperator weyl_sum_u1() {
  auto op = BipartiteOperator::zero(kQutrit, kQutrit);
  for (long n = 0; n < 3; ++n)
    for (long m = 1; m < 3; ++m) op += tensor(weyl(kQutrit, n, m), weyl(kQutrit, -n, m));
  return op;
}

/// U_2^I = U_10 (x) U_{-1,0}.
inline BipartiteOperator weyl_u2_first() { return tensor(weyl(kQutrit, 1, 0), weyl(kQutrit, -1, 0)); }

/// U_2^II = U_20 (x) U_{-2,0}.
inline BipartiteOperator weyl_u2_second() { return tensor(weyl(kQutrit, 2, 0), weyl(kQutrit, -2, 0)); }

// ---------------------------------------------------------------------------
// gamma = 0 slice

enum class Region { I, II, separable };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::separable: return "separable";
  }
  return "?";
}

/// Closed-form Hilbert-Schmidt distances of (alpha, beta, 0) to the region-I and
/// region-II tangent planes of the separable set. Positive inside the region.
inline double region_i_distance(double alpha, double beta) {
  return (2.0 * std::numbers::sqrt2 / 3.0) * (alpha - 0.25 - beta / 8.0);
}
inline double region_ii_distance(double alpha, double beta) {
  return (2.0 * std::numbers::sqrt2 / 6.0) * (-alpha - 0.5 + 1.25 * beta);
}

inline SimplexParams region_i_nearest(double /*alpha*/, double beta) { return {0.25 + beta / 8.0, beta, 0.0}; }
inline SimplexParams region_ii_nearest(double alpha, double beta) {
  return {(-2.0 + 20.0 * alpha + 5.0 * beta) / 24.0, (2.0 + 4.0 * alpha + beta) / 6.0, 0.0};
}

struct RegionWitnesses {
  GeometricWitness c_i;
  GeometricWitness c_ii;
};

/// C_I = (2 - U_1 - U_2)/(6 sqrt 2) and C_II = (2 + U_1 - U_2)/(6 sqrt 2) with
/// U_2 = U_2^I + U_2^II. Each is the normalized geometric witness of any
/// entangled point of its region and that point's nearest separable state.
inline RegionWitnesses region_witnesses() {
  const double k = 1.0 / (6.0 * std::numbers::sqrt2);
  const auto id = BipartiteOperator::identity(kQutrit, kQutrit);
  const auto u1 = weyl_sum_u1();
  const auto u2 = weyl_u2_first() + weyl_u2_second();
  auto herm = [](BipartiteOperator op) {
    Matrix m = 0.5 * (op.entries() + op.entries().adjoint());
    return BipartiteOperator(kQutrit, kQutrit, std::move(m));
  };
  const double dist = std::numbers::sqrt2 / 6.0;
  return {
      {herm(k * (2.0 * id - u1 - u2)), simplex_operator(region_i_nearest(0.5, 0.0)),
       simplex_operator({0.5, 0.0, 0.0}), dist},
      {herm(k * (2.0 * id + u1 - u2)), simplex_operator(region_ii_nearest(0.0, 0.8)),
       simplex_operator({0.0, 0.8, 0.0}), dist},
  };
}

struct NearestSeparable {
  SimplexParams nearest;
  Region region;
  double distance;
};

/// Nearest separable point of an NPT state of the gamma = 0 slice. When both
/// region formulas apply, the smaller distance wins.
inline NearestSeparable nearest_separable_gamma0(double alpha, double beta, double tol = kPsdTol) {
  const SimplexState s = simplex_state({alpha, beta, 0.0}, tol);
  if (!s.valid) {
    throw std::invalid_argument("nearest_separable_gamma0: (" + std::to_string(alpha) + ", " + std::to_string(beta) +
                                ", 0) is not a positive semidefinite state");
  }
  const double pt_min = min_eigenvalue(partial_transpose(s.op, Subsystem::second));
  if (pt_min >= -tol) {
    throw std::invalid_argument("nearest_separable_gamma0: state is PPT, hence separable on this slice; distance 0");
  }
  const double d1 = region_i_distance(alpha, beta);
  const double d2 = region_ii_distance(alpha, beta);
  const bool in1 = d1 > 0.0;
  const bool in2 = d2 > 0.0;
  if (in1 && (!in2 || d1 <= d2)) return {region_i_nearest(alpha, beta), Region::I, d1};
  if (in2) return {region_ii_nearest(alpha, beta), Region::II, d2};
  throw std::logic_error("nearest_separable_gamma0: NPT state outside both witness half-spaces");
}

struct GammaZeroMeasure {
  double value = 0.0;
  Region region = Region::separable;
};

/// Hilbert-Schmidt measure on the gamma = 0 slice; PPT points give 0.
inline GammaZeroMeasure hs_measure_gamma0(double alpha, double beta, double tol = kPsdTol) {
  const SimplexState s = simplex_state({alpha, beta, 0.0}, tol);
  if (!s.valid) {
    throw std::invalid_argument("hs_measure_gamma0: (" + std::to_string(alpha) + ", " + std::to_string(beta) +
                                ", 0) is not a positive semidefinite state");
  }
  if (min_eigenvalue(partial_transpose(s.op, Subsystem::second)) >= -tol) return {0.0, Region::separable};
  const NearestSeparable n = nearest_separable_gamma0(alpha, beta, tol);
  return {n.distance, n.region};
}

// ---------------------------------------------------------------------------
// Lines from a PPT Horodecki state toward 1/9

inline double f1(double gamma, double lambda) { return 8.0 / (7.0 * lambda * (1.0 + 3.0 * gamma * gamma)); }
inline double f2(double gamma, double lambda) {
  return 2.0 * std::sqrt(1.0 + 147.0 * gamma * gamma) / (7.0 * lambda * (1.0 + 3.0 * gamma * gamma));
}

inline constexpr double kGammaMax = 3.0 / 7.0;
/// Slack on the |gamma| <= 3/7 window for decimal inputs such as 0.428571428571429.
inline constexpr double kGammaWindowSlack = 1e-12;

struct LambdaLineWitness {
  double gamma = 0.0;
  double lambda = 0.0;
  double b = 0.0;  // Horodecki anchor
  /// Unnormalized construction from the line; the zero operator at lambda = 1.
  BipartiteOperator op;
  double a = 0.0;
  double c1 = 0.0;
  complex c2{};
};

/// Witness of the line between the Horodecki state with gamma = (5 - 2b)/7 and
/// 1/9, evaluated at lambda, together with the closed-form coefficients of
///   a (2 + c1 U_1 + c2 U_2^I + conj(c2) U_2^II).
inline LambdaLineWitness c_gamma_lambda(double gamma, double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("c_gamma_lambda: lambda = " + std::to_string(lambda) + " outside (0, 1]");
  }
  if (!(std::abs(gamma) <= kGammaMax + kGammaWindowSlack)) {
    throw std::invalid_argument("c_gamma_lambda: |gamma| = " + std::to_string(std::abs(gamma)) +
                                " exceeds 3/7; no PPT Horodecki anchor");
  }
  LambdaLineWitness w;
  w.gamma = gamma;
  w.lambda = lambda;
  w.b = std::clamp(horodecki_b_for_gamma(gamma), 1.0, 4.0);
  const DensityMatrix anchor = horodecki_state(HorodeckiParam(w.b));
  if (lambda < 1.0) {
    w.op = geometric_witness(line_state(anchor, lambda), anchor, false).op;
  } else {
    w.op = BipartiteOperator::zero(kQutrit, kQutrit);
  }
  const double g2 = 1.0 + 3.0 * gamma * gamma;
  w.a = g2 * lambda * (1.0 - lambda) / 36.0;
  w.c1 = -8.0 / (7.0 * lambda * g2);
  w.c2 = 2.0 * complex(1.0, -7.0 * std::sqrt(3.0) * gamma) / (7.0 * lambda * g2);
  return w;
}

/// Closed-form operator a (2 + c1 U_1 + c2 U_2^I + conj(c2) U_2^II).
inline BipartiteOperator lambda_line_closed_form(const LambdaLineWitness& w) {
  auto op = 2.0 * BipartiteOperator::identity(kQutrit, kQutrit);
  op += w.c1 * weyl_sum_u1();
  op += w.c2 * weyl_u2_first();
  op += std::conj(w.c2) * weyl_u2_second();
  return w.a * op;
}

struct DetectionProfile {
  double gamma = 0.0;
  double lambda_1 = 0.0;
  double lambda_2 = 0.0;
  double lambda_min = 0.0;
  bool detects = false;
};

/// Roots of f1 = 1 and f2 = 1 in lambda; both f's decrease in lambda, so the
/// larger root is the smallest lambda with max(f1, f2) <= 1.
inline DetectionProfile detection_profile(double gamma) {
  if (!(std::abs(gamma) <= kGammaMax + kGammaWindowSlack)) {
    throw std::invalid_argument("detection_profile: |gamma| = " + std::to_string(std::abs(gamma)) +
                                " exceeds 3/7; no PPT Horodecki anchor");
  }
  const double g2 = 1.0 + 3.0 * gamma * gamma;
  DetectionProfile p;
  p.gamma = gamma;
  p.lambda_1 = 8.0 / (7.0 * g2);
  p.lambda_2 = 2.0 * std::sqrt(1.0 + 147.0 * gamma * gamma) / (7.0 * g2);
  p.lambda_min = std::max(p.lambda_1, p.lambda_2);
  p.detects = p.lambda_min < 1.0;
  return p;
}

/// Smallest lambda with max(f1, f2) <= 1, found by bisection on [lo, hi].
inline double lambda_min_bisection(double gamma, double tol = 1e-14, double lo = 1e-6, double hi = 16.0) {
  auto g = [gamma](double lambda) { return std::max(f1(gamma, lambda), f2(gamma, lambda)) - 1.0; };
  if (g(lo) <= 0.0 || g(hi) > 0.0) throw std::invalid_argument("lambda_min_bisection: root not bracketed");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct BInterval {
  double lo;
  double hi;
  bool lo_closed;
  bool hi_closed;

  bool contains(double b) const {
    return (lo_closed ? b >= lo : b > lo) && (hi_closed ? b <= hi : b < hi);
  }
};

/// Horodecki parameters whose state is detected by the line witness:
/// [1, (15 - sqrt 21)/6) and ((15 + sqrt 21)/6, 4].
inline std::pair<BInterval, BInterval> horodecki_detection_range() {
  const double r = std::sqrt(21.0);
  return {{1.0, (15.0 - r) / 6.0, true, false}, {(15.0 + r) / 6.0, 4.0, false, true}};
}

}  // namespace gewit
