#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string_view>

#include <Eigen/Dense>

#include "gmax/random.hpp"

namespace gmax {

// Dense row-major storage used throughout.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Pivots in [-kPivotTolerance * max diag, 0] are treated as exact zeros.
inline constexpr double kPivotTolerance = 1e-10;
// Bound on |L L^T - entries| relative to max |entry| accepted after factoring.
inline constexpr double kReconstructionTolerance = 1e-8;

// Validated symmetric positive semidefinite covariance with a cached lower
// Cholesky factor. Immutable; copies share storage and are thread-safe.
class CovarianceSpec {
 public:
  std::size_t dim() const noexcept { return static_cast<std::size_t>(state_->entries.rows()); }
  const Matrix& entries() const noexcept { return state_->entries; }
  const Matrix& factor() const noexcept { return state_->factor; }

  double variance(std::size_t j) const { return state_->entries(j, j); }
  double sigma(std::size_t j) const;
  double sigma_min() const noexcept { return state_->sigma_min; }
  double sigma_max() const noexcept { return state_->sigma_max; }
  bool equal_variances() const noexcept { return state_->sigma_min == state_->sigma_max; }

 private:
  struct State {
    Matrix entries;
    Matrix factor;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
  };

  explicit CovarianceSpec(std::shared_ptr<const State> state) : state_(std::move(state)) {}
  friend CovarianceSpec build_covariance(const Matrix& entries);

  std::shared_ptr<const State> state_;
};

// Symmetrizes (A + A^T)/2, factors with clamped pivots and verifies the
// reconstruction. Throws NonSquare, NonFinite or NotPSD.
CovarianceSpec build_covariance(const Matrix& entries);

// Unit diagonal, constant off-diagonal rho; requires -1/(p-1) <= rho <= 1.
CovarianceSpec equicorrelated(std::size_t p, double rho);

CovarianceSpec diagonal_covariance(std::span<const double> variances);

// Delta = max_jk |a_jk - b_jk|.
double max_covariance_gap(const CovarianceSpec& a, const CovarianceSpec& b);
double max_entry_gap(const Matrix& a, const Matrix& b);

// Draws rows X = L z with z standard normal. Holds mutable stream state, so one
// sampler per thread; identical (spec, seed) pairs give identical draws.
class GaussianSampler {
 public:
  GaussianSampler(CovarianceSpec spec, std::uint64_t seed);

  // n_draws x p matrix of i.i.d. N(0, spec) rows.
  Matrix sample(std::size_t n_draws);

  const CovarianceSpec& spec() const noexcept { return spec_; }

 private:
  CovarianceSpec spec_;
  Rng rng_;
};

// Dense, header-free CSV. Errors carry the 1-based line number.
Matrix parse_matrix_csv(std::istream& in, std::string_view source = "<stream>");
Matrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);

}  // namespace gmax
