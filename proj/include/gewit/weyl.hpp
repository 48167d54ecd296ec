// weyl.hpp: Weyl operator basis, maximally entangled state, Bell projectors
// and expansion of d x d bipartite operators in the Weyl (x) Weyl basis.

#pragma once

#include "gewit/operator.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace gewit {

/// Index pair (n, m) of U_nm, reduced mod d so that U_{-n,m} is U_{d-n,m}.
class WeylIndex {
 public:
  WeylIndex(long n, long m, std::size_t d) : d_(d) {
    if (d < 2) throw std::invalid_argument("WeylIndex: dimension must be at least 2");
    const auto dd = static_cast<long>(d);
    n_ = static_cast<std::size_t>(((n % dd) + dd) % dd);
    m_ = static_cast<std::size_t>(((m % dd) + dd) % dd);
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }
  std::size_t d() const noexcept { return d_; }
  bool is_identity() const noexcept { return n_ == 0 && m_ == 0; }

  /// Flat position n*d + m.
  std::size_t flat() const noexcept { return n_ * d_ + m_; }

  /// (-n mod d, m): the partner index in the Lemma-form products U_nm (x) U_{-n,m}.
  WeylIndex lemma_partner() const { return {-static_cast<long>(n_), static_cast<long>(m_), d_}; }

  friend bool operator==(const WeylIndex&, const WeylIndex&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t d_ = 2;
};

/// U_nm = sum_k exp(2 pi i k n / d) |k><(k+m) mod d|.
inline Matrix weyl(std::size_t d, const WeylIndex& idx) {
  if (d < 2) throw std::invalid_argument("weyl: dimension must be at least 2");
  if (idx.d() != d) throw std::invalid_argument("weyl: index dimension does not match d");
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < d; ++k) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(k * idx.n()) / static_cast<double>(d);
    u(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>((k + idx.m()) % d)) = std::polar(1.0, phase);
  }
  return u;
}

inline Matrix weyl(std::size_t d, long n, long m) { return weyl(d, WeylIndex(n, m, d)); }

/// All d^2 Weyl operators in flat order n*d + m.
inline std::vector<Matrix> weyl_basis(std::size_t d) {
  std::vector<Matrix> basis;
  basis.reserve(d * d);
  for (std::size_t n = 0; n < d; ++n)
    for (std::size_t m = 0; m < d; ++m) basis.push_back(weyl(d, static_cast<long>(n), static_cast<long>(m)));
  return basis;
}

/// |phi+_d> = d^{-1/2} sum_j |j>|j>.
inline Vector max_entangled(std::size_t d) {
  if (d < 2) throw std::invalid_argument("max_entangled: dimension must be at least 2");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d * d));
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) v(static_cast<Eigen::Index>(j * d + j)) = amp;
  return v;
}

/// Reduced operator on the first factor (trace over the second).
inline Matrix partial_trace_second(const BipartiteOperator& x) {
  const auto da = static_cast<Eigen::Index>(x.dim_a());
  const auto db = static_cast<Eigen::Index>(x.dim_b());
  Matrix out = Matrix::Zero(da, da);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index k = 0; k < da; ++k)
      for (Eigen::Index j = 0; j < db; ++j) out(i, k) += x.entries()(i * db + j, k * db + j);
  return out;
}

inline Matrix partial_trace_first(const BipartiteOperator& x) {
  const auto da = static_cast<Eigen::Index>(x.dim_a());
  const auto db = static_cast<Eigen::Index>(x.dim_b());
  Matrix out = Matrix::Zero(db, db);
  for (Eigen::Index j = 0; j < db; ++j)
    for (Eigen::Index l = 0; l < db; ++l)
      for (Eigen::Index i = 0; i < da; ++i) out(j, l) += x.entries()(i * db + j, i * db + l);
  return out;
}

/// P_nm = (U_nm (x) 1)|phi+><phi+|(U_nm^dagger (x) 1).
inline DensityMatrix bell_projector(std::size_t d, const WeylIndex& idx) {
  const auto id = Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  const Vector psi = tensor(weyl(d, idx), id).entries() * max_entangled(d);
  return DensityMatrix(BipartiteOperator(d, d, psi * psi.adjoint()));
}

inline DensityMatrix bell_projector(std::size_t d, long n, long m) { return bell_projector(d, WeylIndex(n, m, d)); }

/// Coefficients of x in the basis U_nm (x) U_lk, stored as a dense d^2 x d^2 table
/// indexed by (flat(n,m), flat(l,k)).
class WeylExpansion {
 public:
  static constexpr double kZeroThreshold = 1e-12;

  WeylExpansion(std::size_t d, Matrix coeffs) : d_(d), coeffs_(std::move(coeffs)) {}

  std::size_t d() const noexcept { return d_; }
  const Matrix& table() const noexcept { return coeffs_; }

  complex coeff(const WeylIndex& first, const WeylIndex& second) const {
    return coeffs_(static_cast<Eigen::Index>(first.flat()), static_cast<Eigen::Index>(second.flat()));
  }
  complex identity_coeff() const { return coeffs_(0, 0); }

  struct Entry {
    WeylIndex first;
    WeylIndex second;
    complex value;
  };

  /// Coefficients with modulus above the threshold.
  std::vector<Entry> significant(double threshold = kZeroThreshold) const {
    std::vector<Entry> out;
    for (std::size_t a = 0; a < d_ * d_; ++a) {
      for (std::size_t b = 0; b < d_ * d_; ++b) {
        const complex c = coeffs_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (std::abs(c) > threshold) {
          out.push_back({WeylIndex(static_cast<long>(a / d_), static_cast<long>(a % d_), d_),
                         WeylIndex(static_cast<long>(b / d_), static_cast<long>(b % d_), d_), c});
        }
      }
    }
    return out;
  }

  BipartiteOperator reconstruct() const {
    const auto basis = weyl_basis(d_);
    auto out = BipartiteOperator::zero(d_, d_);
    for (std::size_t a = 0; a < d_ * d_; ++a) {
      for (std::size_t b = 0; b < d_ * d_; ++b) {
        const complex c = coeffs_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (c != complex{}) out += c * tensor(basis[a], basis[b]);
      }
    }
    return out;
  }

 private:
  std::size_t d_;
  Matrix coeffs_;
};

/// coeff[(n,m),(l,k)] = Tr((U_nm (x) U_lk)^dagger x) / d^2.
inline WeylExpansion weyl_expand(const BipartiteOperator& x) {
  if (x.dim_a() != x.dim_b()) throw std::invalid_argument("weyl_expand: requires equal subsystem dimensions");
  const std::size_t d = x.dim_a();
  const auto db = static_cast<Eigen::Index>(d);
  const auto basis = weyl_basis(d);
  const auto n2 = static_cast<Eigen::Index>(d * d);
  Matrix coeffs(n2, n2);
  const Matrix& e = x.entries();
  // Tr((A (x) B)^dagger X) = sum_{ik,jl} conj(A_ik) conj(B_jl) X_{ij,kl}; row i
  // of U_nm has its single nonzero in column (i + m) mod d.
  for (std::size_t a = 0; a < d * d; ++a) {
    const auto shift_a = static_cast<Eigen::Index>(a % d);
    for (std::size_t b = 0; b < d * d; ++b) {
      const auto shift_b = static_cast<Eigen::Index>(b % d);
      complex acc{};
      for (Eigen::Index i = 0; i < db; ++i) {
        const Eigen::Index k = (i + shift_a) % db;
        for (Eigen::Index j = 0; j < db; ++j) {
          const Eigen::Index l = (j + shift_b) % db;
          acc += std::conj(basis[a](i, k) * basis[b](j, l)) * e(i * db + j, k * db + l);
        }
      }
      coeffs(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc / static_cast<double>(d * d);
    }
  }
  return {d, std::move(coeffs)};
}

}  // namespace gewit
