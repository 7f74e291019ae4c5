#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>

#include "gmax/bounds.hpp"
#include "gmax/gaussian_core.hpp"
#include "gmax/maxlaw.hpp"

namespace gmax {

// n x p observations with the cached Gram matrix n^-1 sum_i Z_i Z_i^T.
class Dataset {
 public:
  // Throws EmptyData or NonFinite.
  explicit Dataset(Matrix z);

  std::size_t n() const noexcept { return static_cast<std::size_t>(z_.rows()); }
  std::size_t p() const noexcept { return static_cast<std::size_t>(z_.cols()); }
  const Matrix& z() const noexcept { return z_; }
  const Matrix& second_moments() const noexcept { return second_moments_; }

 private:
  Matrix z_;
  Matrix second_moments_;
};

enum class DataFormat { Auto, Csv, Binary };

// Binary layout: "GMAX1", u64 n, u64 p, n*p little-endian doubles, row-major.
inline constexpr std::string_view kBinaryMagic = "GMAX1";

Dataset load_dataset(const std::filesystem::path& path, DataFormat format = DataFormat::Auto);
void save_dataset_binary(const std::filesystem::path& path, const Dataset& ds);
void save_dataset_csv(const std::filesystem::path& path, const Dataset& ds);

// S_n = n^{-1/2} sum_i Z_i.
Vector normalized_sum(const Dataset& ds);

// max_jk |Gram_jk - reference_jk|.
double delta_hat(const Dataset& ds, const Matrix& reference);

enum class ReplicatePath {
  Covariance,  // draws of N(0, Gram) via one factorization
  Multiplier,  // explicit eta: max_j n^{-1/2} sum_i eta_i Z_ij
};

SampleSet multiplier_replicates(const Dataset& ds, std::size_t r, std::uint64_t seed,
                                ReplicatePath path = ReplicatePath::Covariance,
                                unsigned workers = 1);

SampleSet gaussian_analog_replicates(const CovarianceSpec& cov, std::size_t r, std::uint64_t seed,
                                     unsigned workers = 1);

struct BootstrapSeeds {
  std::uint64_t multiplier = 0;
  std::optional<std::uint64_t> analog;
};

// The analog law (and Delta-hat) needs population moments, so both are absent
// when only data is available. When present, both sample sets have equal size.
struct BootstrapRun {
  SampleSet replicates;
  std::optional<SampleSet> gaussian_analog;
  std::optional<double> delta_hat;
  BootstrapSeeds seeds;
};

// Empirical (1 - alpha) quantile: order statistic ceil((1 - alpha) R), 1-based.
double bootstrap_quantile(const SampleSet& replicates, double alpha);
double bootstrap_quantile(const BootstrapRun& run, double alpha);

// Two-sample KS allowance for identical laws: 2 * 1.36 / sqrt(r).
double ks_noise_allowance(std::size_t r) noexcept;

struct CmcltReport {
  double distance = 0.0;
  double delta_hat = 0.0;
  BoundReport shape_bound;
  double noise_allowance = 0.0;
  bool within_prediction = false;
  BootstrapRun run;
};

// KS distance between the conditional bootstrap max law and the max law of
// N(0, true_cov), next to the kolmogorov_shape(Delta-hat) prediction. r >= 1000.
CmcltReport cmclt_check(const Dataset& ds, const CovarianceSpec& true_cov, std::size_t r,
                        std::uint64_t seed, double c = 1.0, unsigned workers = 1);

// Writes replicates.csv, gaussian_analog.csv (when present) and manifest.json.
void write_bootstrap_run(const std::filesystem::path& dir, const BootstrapRun& run,
                         std::span<const double> alphas);

struct GeneratedData {
  Dataset data;
  Matrix population_second_moments;
};

GeneratedData generate_gaussian_data(const CovarianceSpec& cov, std::size_t n, std::uint64_t seed);
// Independent centered Laplace coordinates with unit variance (sub-exponential).
GeneratedData generate_case_a_data(std::size_t n, std::size_t p, std::uint64_t seed);
// Z_ij = e_i x_ij with fixed regressors (n^-1 sum_i x_ij^2 = 1, max |x_ij| = bn)
// and unit-variance Student-t errors having finite moments of order 4q.
GeneratedData generate_case_b_data(std::size_t n, std::size_t p, double bn, double q,
                                   std::uint64_t seed);

}  // namespace gmax
