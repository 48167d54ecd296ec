// simplex.hpp: the three-parameter two-qutrit family inside the magic simplex,
// the Horodecki one-parameter family, and lines toward the maximally mixed state.

#pragma once

#include "gewit/operator.hpp"
#include "gewit/weyl.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace gewit {

inline constexpr std::size_t kQutrit = 3;

/// Mixing weights of
///   rho = (1-a-b-g)/9 1 + a P00 + b/2 (P10 + P20) + g/3 (P01 + P11 + P21).
struct SimplexParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  friend bool operator==(const SimplexParams&, const SimplexParams&) = default;
};

/// Horodecki parameter b in [0, 5].
class HorodeckiParam {
 public:
  explicit HorodeckiParam(double b) : b_(b) {
    if (!(b >= 0.0 && b <= 5.0)) {
      throw std::invalid_argument("HorodeckiParam: b = " + std::to_string(b) + " outside [0, 5]");
    }
  }
  double value() const noexcept { return b_; }

 private:
  double b_;
};

struct EigenvalueGroup {
  double value;
  int multiplicity;
};

/// Closed-form Bell-diagonal spectrum: {t + a (x1), t + b/2 (x2), t + g/3 (x3), t (x3)}
/// with t = (1-a-b-g)/9.
inline std::array<EigenvalueGroup, 4> simplex_spectrum(const SimplexParams& p) {
  const double t = (1.0 - p.alpha - p.beta - p.gamma) / 9.0;
  return {{{t + p.alpha, 1}, {t + p.beta / 2.0, 2}, {t + p.gamma / 3.0, 3}, {t, 3}}};
}

inline double simplex_min_eigenvalue(const SimplexParams& p) {
  double lo = simplex_spectrum(p)[0].value;
  for (const auto& g : simplex_spectrum(p)) lo = std::min(lo, g.value);
  return lo;
}

inline bool simplex_valid(const SimplexParams& p, double tol = kPsdTol) { return simplex_min_eigenvalue(p) >= -tol; }

/// The operator of the family, tagged with its validity instead of throwing.
struct SimplexState {
  SimplexParams params;
  BipartiteOperator op;
  bool valid = false;
  double min_eigenvalue = 0.0;

  /// Throws when the parameters do not describe a PSD state.
  DensityMatrix density() const {
    if (!valid) {
      throw std::invalid_argument("SimplexState: parameters (" + std::to_string(params.alpha) + ", " +
                                  std::to_string(params.beta) + ", " + std::to_string(params.gamma) +
                                  ") do not give a positive semidefinite state");
    }
    return DensityMatrix(op);
  }
};

inline BipartiteOperator simplex_operator(const SimplexParams& p) {
  const double t = (1.0 - p.alpha - p.beta - p.gamma) / 9.0;
  auto op = BipartiteOperator::identity(kQutrit, kQutrit) * t;
  op += p.alpha * bell_projector(kQutrit, 0, 0).op();
  op += (p.beta / 2.0) * (bell_projector(kQutrit, 1, 0).op() + bell_projector(kQutrit, 2, 0).op());
  op += (p.gamma / 3.0) * (bell_projector(kQutrit, 0, 1).op() + bell_projector(kQutrit, 1, 1).op() +
                           bell_projector(kQutrit, 2, 1).op());
  return op;
}

inline SimplexState simplex_state(const SimplexParams& p, double tol = kPsdTol) {
  SimplexState s{p, simplex_operator(p), false, 0.0};
  s.min_eigenvalue = min_eigenvalue(s.op);
  s.valid = s.min_eigenvalue >= -tol;
  return s;
}

// ---------------------------------------------------------------------------
// Horodecki states

/// sigma_+ is the uniform mixture of |i, i-1 mod 3> and sigma_- that of
/// |i, i+1 mod 3>. With U_nm = sum_k w^{kn} |k><k+m| and P_nm built on the
/// first factor, sigma_+ = (P02 + P12 + P22)/3 and sigma_- = (P01 + P11 + P21)/3,
/// the ordering under which rho_b sits at alpha = (6-b)/21, beta = -2b/21,
/// gamma = (5-2b)/7. Exchanging the two qutrits maps rho_b to rho_{5-b}.
inline BipartiteOperator horodecki_sigma(bool plus) {
  auto op = BipartiteOperator::zero(kQutrit, kQutrit);
  Matrix m = op.entries();
  for (std::size_t i = 0; i < kQutrit; ++i) {
    const std::size_t j = plus ? (i + kQutrit - 1) % kQutrit : (i + 1) % kQutrit;
    const auto row = static_cast<Eigen::Index>(i * kQutrit + j);
    m(row, row) = 1.0 / 3.0;
  }
  return {kQutrit, kQutrit, std::move(m)};
}

/// rho_b = 2/7 |phi+><phi+| + b/7 sigma_+ + (5-b)/7 sigma_-.
inline DensityMatrix horodecki_state(const HorodeckiParam& b) {
  const Vector phi = max_entangled(kQutrit);
  BipartiteOperator op(kQutrit, kQutrit, (2.0 / 7.0) * (phi * phi.adjoint()));
  op += (b.value() / 7.0) * horodecki_sigma(true);
  op += ((5.0 - b.value()) / 7.0) * horodecki_sigma(false);
  return DensityMatrix(std::move(op));
}

inline SimplexParams horodecki_to_simplex(const HorodeckiParam& b) {
  const double v = b.value();
  return {(6.0 - v) / 21.0, -2.0 * v / 21.0, (5.0 - 2.0 * v) / 7.0};
}

/// Inverse of gamma = (5 - 2b)/7.
inline double horodecki_b_for_gamma(double gamma) { return (5.0 - 7.0 * gamma) / 2.0; }

// ---------------------------------------------------------------------------
// Lines toward the maximally mixed state

/// lambda rho + (1 - lambda) 1/D.
inline DensityMatrix line_state(const DensityMatrix& rho, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("line_state: lambda = " + std::to_string(lambda) + " outside [0, 1]");
  }
  auto op = lambda * rho.op();
  op += (1.0 - lambda) * BipartiteOperator::maximally_mixed(rho.dim_a(), rho.dim_b());
  return DensityMatrix(std::move(op));
}

/// (alpha, beta) = ((1 + gamma)/6, (-5 + 7 gamma)/21): where the Horodecki line
/// crosses the slice of fixed gamma. No window check.
inline std::pair<double, double> slice_point_for_gamma(double gamma) {
  return {(1.0 + gamma) / 6.0, (-5.0 + 7.0 * gamma) / 21.0};
}

/// (alpha, beta) of the bound-entangled Horodecki state in the slice of fixed
/// gamma = (5 - 2b)/7; defined for -3/7 <= gamma < -1/7, i.e. 3 < b <= 4.
inline std::pair<double, double> gamma_slice_point(const HorodeckiParam& b) {
  // gamma < -1/7 <=> b > 3 and gamma >= -3/7 <=> b <= 4, compared on b to
  // keep the window edges exact.
  if (!(b.value() > 3.0 && b.value() <= 4.0)) {
    throw std::invalid_argument("gamma_slice_point: b = " + std::to_string(b.value()) +
                                " is outside the bound-entangled window 3 < b <= 4 (-3/7 <= gamma < -1/7)");
  }
  return slice_point_for_gamma((5.0 - 2.0 * b.value()) / 7.0);
}

}  // namespace gewit
