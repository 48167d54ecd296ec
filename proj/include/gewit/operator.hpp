// operator.hpp: dense bipartite operators, Hilbert-Schmidt geometry,
// partial transposition and Hermitian spectra.
//
// Basis convention: |i> (x) |j> maps to row i*dim_b + j.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gewit {

using complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

enum class Subsystem { first = 1, second = 2 };

class BipartiteOperator {
 public:
  BipartiteOperator() = default;

  BipartiteOperator(std::size_t dim_a, std::size_t dim_b, Matrix entries)
      : dim_a_(dim_a), dim_b_(dim_b), entries_(std::move(entries)) {
    if (dim_a_ == 0 || dim_b_ == 0) {
      throw std::invalid_argument("BipartiteOperator: subsystem dimensions must be positive");
    }
    const auto side = static_cast<Eigen::Index>(dim_a_ * dim_b_);
    if (entries_.rows() != side || entries_.cols() != side) {
      throw std::invalid_argument("BipartiteOperator: entries must be square with side dim_a*dim_b (" +
                                  std::to_string(side) + "), got " + std::to_string(entries_.rows()) +
                                  "x" + std::to_string(entries_.cols()));
    }
  }

  static BipartiteOperator zero(std::size_t dim_a, std::size_t dim_b) {
    const auto n = static_cast<Eigen::Index>(dim_a * dim_b);
    return {dim_a, dim_b, Matrix::Zero(n, n)};
  }

  static BipartiteOperator identity(std::size_t dim_a, std::size_t dim_b) {
    const auto n = static_cast<Eigen::Index>(dim_a * dim_b);
    return {dim_a, dim_b, Matrix::Identity(n, n)};
  }

  /// Maximally mixed state 1_D / D as an operator.
  static BipartiteOperator maximally_mixed(std::size_t dim_a, std::size_t dim_b) {
    auto op = identity(dim_a, dim_b);
    op.entries_ /= static_cast<double>(dim_a * dim_b);
    return op;
  }

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  std::size_t dim() const noexcept { return dim_a_ * dim_b_; }
  const Matrix& entries() const noexcept { return entries_; }

  complex trace() const { return entries_.trace(); }

  bool same_shape(const BipartiteOperator& other) const noexcept {
    return dim_a_ == other.dim_a_ && dim_b_ == other.dim_b_;
  }

  double hermiticity_defect() const { return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff(); }
  bool is_hermitian(double tol = kHermitianTol) const { return hermiticity_defect() <= tol; }

  BipartiteOperator adjoint() const { return {dim_a_, dim_b_, entries_.adjoint()}; }

  BipartiteOperator& operator+=(const BipartiteOperator& rhs) {
    require_same_shape(rhs, "operator+=");
    entries_ += rhs.entries_;
    return *this;
  }
  BipartiteOperator& operator-=(const BipartiteOperator& rhs) {
    require_same_shape(rhs, "operator-=");
    entries_ -= rhs.entries_;
    return *this;
  }
  BipartiteOperator& operator*=(complex s) {
    entries_ *= s;
    return *this;
  }

  friend BipartiteOperator operator+(BipartiteOperator lhs, const BipartiteOperator& rhs) { return lhs += rhs; }
  friend BipartiteOperator operator-(BipartiteOperator lhs, const BipartiteOperator& rhs) { return lhs -= rhs; }
  friend BipartiteOperator operator*(BipartiteOperator op, complex s) { return op *= s; }
  friend BipartiteOperator operator*(complex s, BipartiteOperator op) { return op *= s; }
  friend BipartiteOperator operator*(BipartiteOperator op, double s) { return op *= complex(s, 0.0); }
  friend BipartiteOperator operator*(double s, BipartiteOperator op) { return op *= complex(s, 0.0); }

  /// Matrix product (same bipartite layout).
  friend BipartiteOperator operator*(const BipartiteOperator& lhs, const BipartiteOperator& rhs) {
    lhs.require_same_shape(rhs, "operator*");
    return {lhs.dim_a_, lhs.dim_b_, lhs.entries_ * rhs.entries_};
  }

  void require_same_shape(const BipartiteOperator& other, const char* where) const {
    if (!same_shape(other)) {
      throw std::invalid_argument(std::string(where) + ": dimension mismatch (" + std::to_string(dim_a_) + "x" +
                                  std::to_string(dim_b_) + " vs " + std::to_string(other.dim_a_) + "x" +
                                  std::to_string(other.dim_b_) + ")");
    }
  }

 private:
  std::size_t dim_a_ = 1;
  std::size_t dim_b_ = 1;
  Matrix entries_ = Matrix::Zero(1, 1);
};

// ---------------------------------------------------------------------------
// Hilbert-Schmidt geometry

/// <a, b> = Tr(a^dagger b).
inline complex hs_inner(const BipartiteOperator& a, const BipartiteOperator& b) {
  a.require_same_shape(b, "hs_inner");
  // Tr(A^dagger B) = sum_ij conj(A_ij) B_ij
  return (a.entries().conjugate().cwiseProduct(b.entries())).sum();
}

inline double hs_norm(const BipartiteOperator& a) { return a.entries().norm(); }

inline double hs_distance(const BipartiteOperator& a, const BipartiteOperator& b) {
  a.require_same_shape(b, "hs_distance");
  return (a.entries() - b.entries()).norm();
}

// ---------------------------------------------------------------------------
// Tensor product and partial transposition

inline BipartiteOperator tensor(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw std::invalid_argument("tensor: factors must be square");
  }
  const auto da = a.rows();
  const auto db = b.rows();
  Matrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index k = 0; k < da; ++k) {
      out.block(i * db, k * db, db, db) = a(i, k) * b;
    }
  }
  return {static_cast<std::size_t>(da), static_cast<std::size_t>(db), std::move(out)};
}

inline Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Transposes the chosen tensor factor; entry <i j|X|k l> moves to <k j|X|i l>
/// (first) or <i l|X|k j> (second).
inline BipartiteOperator partial_transpose(const BipartiteOperator& x, Subsystem side) {
  const auto da = static_cast<Eigen::Index>(x.dim_a());
  const auto db = static_cast<Eigen::Index>(x.dim_b());
  const Matrix& in = x.entries();
  Matrix out(in.rows(), in.cols());
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < db; ++j) {
      for (Eigen::Index k = 0; k < da; ++k) {
        for (Eigen::Index l = 0; l < db; ++l) {
          if (side == Subsystem::first) {
            out(i * db + j, k * db + l) = in(k * db + j, i * db + l);
          } else {
            out(i * db + j, k * db + l) = in(i * db + l, k * db + j);
          }
        }
      }
    }
  }
  return {x.dim_a(), x.dim_b(), std::move(out)};
}

// ---------------------------------------------------------------------------
// Spectra

inline void require_hermitian(const BipartiteOperator& h, double tol, const char* where) {
  const double defect = h.hermiticity_defect();
  if (defect > tol) {
    throw std::invalid_argument(std::string(where) + ": operator is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  }
}

/// Ascending real eigenvalues of a Hermitian operator.
inline std::vector<double> hermitian_spectrum(const BipartiteOperator& h, double hermitian_tol = kPsdTol) {
  require_hermitian(h, hermitian_tol, "hermitian_spectrum");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_spectrum: eigensolver failed");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline double min_eigenvalue(const BipartiteOperator& h) { return hermitian_spectrum(h).front(); }

struct PsdCheck {
  bool positive = false;
  double min_eigenvalue = 0.0;
};

inline PsdCheck is_positive_semidefinite(const BipartiteOperator& h, double tol = kPsdTol) {
  const double lo = min_eigenvalue(h);
  return {lo >= -tol, lo};
}

// ---------------------------------------------------------------------------
// Density matrices

/// A BipartiteOperator known to be Hermitian, unit-trace and PSD.
class DensityMatrix {
 public:
  explicit DensityMatrix(BipartiteOperator op, double psd_tol = kPsdTol) : op_(std::move(op)) {
    const double defect = op_.hermiticity_defect();
    if (defect > kHermitianTol) {
      throw std::invalid_argument("DensityMatrix: not Hermitian (defect " + std::to_string(defect) + ")");
    }
    const complex tr = op_.trace();
    if (std::abs(tr - complex(1.0, 0.0)) > kTraceTol) {
      throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr.real()) + " differs from 1");
    }
    min_eigenvalue_ = gewit::min_eigenvalue(op_);
    if (min_eigenvalue_ < -psd_tol) {
      throw std::invalid_argument("DensityMatrix: not positive semidefinite (min eigenvalue " +
                                  std::to_string(min_eigenvalue_) + ")");
    }
  }

  static DensityMatrix maximally_mixed(std::size_t dim_a, std::size_t dim_b) {
    return DensityMatrix(BipartiteOperator::maximally_mixed(dim_a, dim_b));
  }

  /// |psi><psi| for a normalized vector on a dim_a x dim_b space.
  static DensityMatrix pure(const Vector& psi, std::size_t dim_a, std::size_t dim_b) {
    if (static_cast<std::size_t>(psi.size()) != dim_a * dim_b) {
      throw std::invalid_argument("DensityMatrix::pure: vector length does not match dimensions");
    }
    const Vector unit = psi / psi.norm();
    return DensityMatrix(BipartiteOperator(dim_a, dim_b, unit * unit.adjoint()));
  }

  const BipartiteOperator& op() const noexcept { return op_; }
  operator const BipartiteOperator&() const noexcept { return op_; }  // NOLINT
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }
  std::size_t dim_a() const noexcept { return op_.dim_a(); }
  std::size_t dim_b() const noexcept { return op_.dim_b(); }

 private:
  BipartiteOperator op_;
  double min_eigenvalue_ = 0.0;
};

}  // namespace gewit
