// ppt.hpp: PPT/NPT classification, nearest PPT state by Dykstra's alternating
// projections, and a seeded sampler of separable states used to probe witnesses.

#pragma once

#include "gewit/operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace gewit {

// ---------------------------------------------------------------------------
// Classification

struct PptVerdict {
  bool npt = false;
  double min_pt_eigenvalue = 0.0;
  double tolerance = kPsdTol;

  const char* label() const noexcept { return npt ? "NPT" : "PPT"; }
};

/// Partial transposition is always taken on the second factor.
inline PptVerdict classify_ppt(const BipartiteOperator& rho, double tol = kPsdTol) {
  const double lo = min_eigenvalue(partial_transpose(rho, Subsystem::second));
  return {lo < -tol, lo, tol};
}

inline PptVerdict classify_ppt(const DensityMatrix& rho, double tol = kPsdTol) { return classify_ppt(rho.op(), tol); }

// ---------------------------------------------------------------------------
// Projections

namespace detail {

/// Euclidean projection of v onto the probability simplex.
inline Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

inline Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace detail

/// Nearest unit-trace PSD operator to a Hermitian operator (Hilbert-Schmidt metric).
inline BipartiteOperator project_density(const BipartiteOperator& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(detail::hermitian_part(x.entries()));
  if (solver.info() != Eigen::Success) throw std::runtime_error("project_density: eigensolver failed");
  const Eigen::VectorXd w = detail::project_simplex(solver.eigenvalues());
  const Matrix& v = solver.eigenvectors();
  Matrix out = v * w.cast<complex>().asDiagonal() * v.adjoint();
  return {x.dim_a(), x.dim_b(), detail::hermitian_part(out)};
}

/// Nearest operator whose partial transpose is a unit-trace PSD operator.
/// Partial transposition is an isometry, so this conjugates project_density.
inline BipartiteOperator project_ppt(const BipartiteOperator& x) {
  return partial_transpose(project_density(partial_transpose(x, Subsystem::second)), Subsystem::second);
}

struct NearestPptResult {
  DensityMatrix state;
  bool converged = false;
  int iterations = 0;
  /// hs_norm between the last two iterates.
  double residual = 0.0;
  double distance = 0.0;
  double min_pt_eigenvalue = 0.0;
};

/// Metric projection of rho onto the PPT states. Dykstra's scheme between the
/// density matrices and the operators with a density-matrix partial transpose;
/// the correction terms make the limit the nearest point of the intersection.
inline NearestPptResult nearest_ppt(const DensityMatrix& rho, double tol = 1e-12, int max_iter = 200000) {
  const PptVerdict start = classify_ppt(rho, kPsdTol);
  if (!start.npt) return {rho, true, 0, 0.0, 0.0, start.min_pt_eigenvalue};

  BipartiteOperator x = rho.op();
  BipartiteOperator y = x;
  auto p = BipartiteOperator::zero(rho.dim_a(), rho.dim_b());
  auto q = p;
  double residual = std::numeric_limits<double>::infinity();
  int it = 0;
  bool converged = false;
  while (it < max_iter) {
    ++it;
    const BipartiteOperator y_prev = y;
    const BipartiteOperator x_prev = x;
    y = project_density(x + p);
    p = x + p - y;
    x = project_ppt(y + q);
    q = y + q - x;
    residual = std::max(hs_distance(y, y_prev), hs_distance(x, x_prev));
    if (residual < tol && hs_distance(x, y) < std::sqrt(tol)) {
      converged = true;
      break;
    }
  }
  DensityMatrix out(y);
  return {out, converged, it, residual, hs_distance(out.op(), rho.op()),
          min_eigenvalue(partial_transpose(out.op(), Subsystem::second))};
}

// ---------------------------------------------------------------------------
// Separable sampling

struct SamplerConfig {
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  std::size_t mixing_degree = 1;
};

struct ProductTerm {
  double weight = 1.0;
  Vector a;
  Vector b;
};

/// sum_k p_k |a_k><a_k| (x) |b_k><b_k|.
struct SeparableSample {
  std::vector<ProductTerm> terms;

  BipartiteOperator op() const {
    const auto da = static_cast<std::size_t>(terms.front().a.size());
    const auto db = static_cast<std::size_t>(terms.front().b.size());
    auto out = BipartiteOperator::zero(da, db);
    for (const auto& t : terms) out += t.weight * tensor(Matrix(t.a * t.a.adjoint()), Matrix(t.b * t.b.adjoint()));
    return out;
  }
  DensityMatrix state() const { return DensityMatrix(op()); }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Vector haar_vector(std::size_t d, std::mt19937_64& rng, std::normal_distribution<double>& normal) {
  Vector v(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = complex(re, im);
  }
  return v / v.norm();
}

}  // namespace detail

/// Deterministic stream of separable states. Indices are grouped in blocks of
/// kBlock, each with its own engine seeded from (seed, block), so sample i
/// depends only on (seed, i): streams can be split by block and extended
/// without changing earlier samples. Vectors are Haar-random (normalized
/// complex Gaussians); weights are flat-Dirichlet.
class ProductStateSampler {
 public:
  static constexpr std::size_t kBlock = 1024;

  ProductStateSampler(std::size_t dim_a, std::size_t dim_b, SamplerConfig config)
      : dim_a_(dim_a), dim_b_(dim_b), config_(config) {
    if (config_.count < 1) throw std::invalid_argument("SamplerConfig: count must be at least 1");
    if (config_.mixing_degree < 1) throw std::invalid_argument("SamplerConfig: mixing_degree must be at least 1");
  }
  ProductStateSampler(std::size_t d, SamplerConfig config) : ProductStateSampler(d, d, config) {}

  const SamplerConfig& config() const noexcept { return config_; }

  /// Sequential access is O(1); jumping backwards or across blocks replays
  /// the block prefix.
  SeparableSample at(std::size_t index) {
    const std::size_t block = index / kBlock;
    if (block != block_ || index < cursor_) {
      rng_.seed(detail::splitmix64(config_.seed ^ detail::splitmix64(block)));
      normal_.reset();
      expo_.reset();
      block_ = block;
      cursor_ = block * kBlock;
    }
    while (cursor_ < index) {
      draw();
      ++cursor_;
    }
    ++cursor_;
    return draw();
  }

  bool done() const noexcept { return next_ >= config_.count; }
  SeparableSample next() { return at(next_++); }

 private:
  SeparableSample draw() {
    SeparableSample s;
    s.terms.resize(config_.mixing_degree);
    double total = 0.0;
    for (auto& t : s.terms) {
      t.a = detail::haar_vector(dim_a_, rng_, normal_);
      t.b = detail::haar_vector(dim_b_, rng_, normal_);
      t.weight = config_.mixing_degree == 1 ? 1.0 : expo_(rng_);
      total += t.weight;
    }
    for (auto& t : s.terms) t.weight /= total;
    return s;
  }

  std::size_t dim_a_;
  std::size_t dim_b_;
  SamplerConfig config_;
  std::size_t next_ = 0;
  std::size_t block_ = static_cast<std::size_t>(-1);
  std::size_t cursor_ = 0;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::exponential_distribution<double> expo_{1.0};
};

inline std::vector<DensityMatrix> sample_product_state(std::size_t d, const SamplerConfig& config) {
  ProductStateSampler sampler(d, config);
  std::vector<DensityMatrix> out;
  out.reserve(config.count);
  while (!sampler.done()) out.push_back(sampler.next().state());
  return out;
}

namespace detail {

// Up to 9 x 9 factors without heap traffic.
using SmallMatrix = Eigen::Matrix<complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 9, 9>;
using SmallVector = Eigen::Matrix<complex, Eigen::Dynamic, 1, Eigen::ColMajor, 9, 1>;

/// (1 (x) b)^dagger W (1 (x) b).
inline SmallMatrix contract_second(const Matrix& w, Eigen::Index da, Eigen::Index db, const SmallVector& b) {
  SmallMatrix m = SmallMatrix::Zero(da, da);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index k = 0; k < da; ++k) {
      complex acc{};
      for (Eigen::Index j = 0; j < db; ++j) {
        complex row{};
        for (Eigen::Index l = 0; l < db; ++l) row += w(i * db + j, k * db + l) * b(l);
        acc += std::conj(b(j)) * row;
      }
      m(i, k) = acc;
    }
  return m;
}

/// (a (x) 1)^dagger W (a (x) 1).
inline SmallMatrix contract_first(const Matrix& w, Eigen::Index da, Eigen::Index db, const SmallVector& a) {
  SmallMatrix m = SmallMatrix::Zero(db, db);
  for (Eigen::Index j = 0; j < db; ++j)
    for (Eigen::Index l = 0; l < db; ++l) {
      complex acc{};
      for (Eigen::Index i = 0; i < da; ++i) {
        complex row{};
        for (Eigen::Index k = 0; k < da; ++k) row += w(i * db + j, k * db + l) * a(k);
        acc += std::conj(a(i)) * row;
      }
      m(j, l) = acc;
    }
  return m;
}

inline double rayleigh(const SmallMatrix& m, const SmallVector& v) {
  const Eigen::Index n = v.size();
  double num = 0.0;
  double den = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    complex row{};
    for (Eigen::Index k = 0; k < n; ++k) row += m(i, k) * v(k);
    num += (std::conj(v(i)) * row).real();
    den += std::norm(v(i));
  }
  return num / den;
}

/// Coordinate perturbation of v (real and imaginary parts) with fixed step;
/// the first improving direction is kept per coordinate. m is Hermitian, so a
/// trial v + delta e_c changes the quotient's numerator by
/// 2 Re(conj(delta) (m v)_c) + |delta|^2 m_cc and its denominator by
/// 2 Re(conj(delta) v_c) + |delta|^2. Returns the new quotient.
inline double perturb_coordinates(const SmallMatrix& m, SmallVector& v, double value, double step) {
  SmallVector mv = m * v;
  double num = (v.adjoint() * mv)(0, 0).real();
  double den = v.squaredNorm();
  for (Eigen::Index c = 0; c < 2 * v.size(); ++c) {
    const Eigen::Index k = c / 2;
    const complex unit = (c % 2 == 0) ? complex(1.0, 0.0) : complex(0.0, 1.0);
    for (const double sign : {1.0, -1.0}) {
      const complex delta = sign * step * unit;
      const double dd = std::norm(delta);
      const double num_t = num + 2.0 * (std::conj(delta) * mv(k)).real() + dd * m(k, k).real();
      const double den_t = den + 2.0 * (std::conj(delta) * v(k)).real() + dd;
      if (num_t / den_t < value) {
        v(k) += delta;
        mv += delta * m.col(k);
        num = num_t;
        den = den_t;
        value = num_t / den_t;
        break;
      }
    }
  }
  v /= v.norm();
  return rayleigh(m, v);
}

}  // namespace detail

struct SeparableProbe {
  double minimum = std::numeric_limits<double>::infinity();
  std::size_t argmin_sample = 0;
  Vector a;
  Vector b;
  std::size_t samples = 0;
};

/// Smallest <sigma, W> found over sampled pure product components, each
/// refined by coordinate perturbation with step halving. This is an upper
/// bound on the minimum over separable states: a negative value proves W is
/// not a witness, a nonnegative one is only evidence.
inline SeparableProbe min_separable_expectation(const BipartiteOperator& w, const SamplerConfig& config,
                                                int refine_steps = 4) {
  require_hermitian(w, kPsdTol, "min_separable_expectation");
  if (w.dim_a() > 9 || w.dim_b() > 9) throw std::invalid_argument("min_separable_expectation: factor dimension > 9");
  const auto da = static_cast<Eigen::Index>(w.dim_a());
  const auto db = static_cast<Eigen::Index>(w.dim_b());
  const Matrix& wm = w.entries();
  ProductStateSampler sampler(w.dim_a(), w.dim_b(), config);

  SeparableProbe probe;
  probe.samples = config.count;
  for (std::size_t s = 0; s < config.count; ++s) {
    const SeparableSample sample = sampler.at(s);
    for (const auto& term : sample.terms) {
      detail::SmallVector a = term.a;
      detail::SmallVector b = term.b;
      double value = detail::rayleigh(detail::contract_second(wm, da, db, b), a);
      double step = 0.5;
      for (int r = 0; r < refine_steps; ++r, step *= 0.5) {
        value = detail::perturb_coordinates(detail::contract_second(wm, da, db, b), a, value, step);
        value = detail::perturb_coordinates(detail::contract_first(wm, da, db, a), b, value, step);
      }
      if (value < probe.minimum) {
        probe.minimum = value;
        probe.argmin_sample = s;
        probe.a = a;
        probe.b = b;
      }
    }
  }
  return probe;
}

}  // namespace gewit
