#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gmax/gaussian_core.hpp"

namespace gmax {

double normal_pdf(double x) noexcept;
// Phi via erfc; relative accuracy near machine precision on both tails.
double normal_cdf(double x) noexcept;
// log Phi(x), finite for all finite x.
double normal_log_cdf(double x) noexcept;
// Phi^{-1}(u) for u in (0, 1).
double normal_quantile(double u);
// The x with 1 - Phi(x) = q, accurate for tiny q.
double normal_upper_quantile(double q);

struct SeedProvenance {
  std::uint64_t seed = 0;
  std::string generator;
  std::string experiment;
};

// Sorted, finite, non-empty collection of scalar draws.
class SampleSet {
 public:
  explicit SampleSet(std::vector<double> draws, SeedProvenance provenance = {});

  std::size_t size() const noexcept { return draws_.size(); }
  std::span<const double> draws() const noexcept { return draws_; }
  const SeedProvenance& provenance() const noexcept { return provenance_; }

  // Fraction of draws <= x.
  double ecdf(double x) const noexcept;
  double mean() const noexcept;
  // Unbiased sample variance (0 when size() == 1).
  double variance() const noexcept;
  double min() const noexcept { return draws_.front(); }
  double max() const noexcept { return draws_.back(); }

 private:
  std::vector<double> draws_;
  SeedProvenance provenance_;
};

struct GumbelCalibration {
  double p;
  double b;  // sqrt(2 log p)
  double d;  // b - (log(4 pi) + log log p) / (2 b)
};

GumbelCalibration gumbel_calibration(double p);

// Phi(x)^p, evaluated as exp(p log Phi(x)).
double iid_max_cdf(double x, double p);
// p phi(x) Phi(x)^{p-1}.
double iid_max_pdf(double x, double p);
double gumbel_cdf(double x) noexcept;
double gumbel_pdf(double x) noexcept;
// Density of b_p (max - d_p) for p i.i.d. standard normals.
double gumbel_approx_density(double x, double p);
// Density of max(W1, W2) for standard normals with correlation rho in (-1, 1):
// 2 phi(x) Phi(x sqrt((1 - rho)/(1 + rho))).
double max_density_bivariate(double x, double rho);

// sup_x fraction of draws in [x - eps, x + eps]; exact for the ECDF since an
// optimal closed window [s, s + 2 eps] can start at a draw.
double levy_concentration(const SampleSet& samples, double epsilon);

// Exact sup |F_a - F_b| over the merged jump points.
double kolmogorov_distance(const SampleSet& a, const SampleSet& b);
// Exact sup |F_n - F| for continuous F, using both one-sided ECDF limits.
double kolmogorov_distance(const SampleSet& a, const std::function<double(double)>& cdf);

struct MonotoneCheckReport {
  double max_decrease = 0.0;
  double worst_rho = 0.0;
  double worst_mu = 0.0;
  double worst_x = 0.0;
  std::size_t points = 0;
};

// For standard W0 ~ N(mu, 1), centered W1 ~ N(0, 1) with correlation rho, checks that
// x -> exp(mu x - mu^2/2) P(W1 <= x | W0 = x) never decreases along x_grid, for
// every rho in rho_grid and every mu >= 0 in mu_grid. Reports the largest drop.
MonotoneCheckReport monotone_density_factor_check(std::span<const double> rho_grid,
                                                  std::span<const double> x_grid,
                                                  std::span<const double> mu_grid);

// Rows per independently seeded block in every replicate generator.
inline constexpr std::size_t kDrawBlock = 4096;

// r draws of max_j X_j, X ~ N(0, spec). Block b uses derive_seed(seed, b).
SampleSet draw_maxima(const CovarianceSpec& spec, std::size_t r, std::uint64_t seed,
                      unsigned workers = 1);

struct MaximaDraws {
  SampleSet maxima;        // max_j X_j
  SampleSet standardized;  // max_j X_j / sigma_j over coordinates with sigma_j > 0
};
MaximaDraws draw_maxima_with_standardized(const CovarianceSpec& spec, std::size_t r,
                                          std::uint64_t seed, unsigned workers = 1);

// r draws of the max of p i.i.d. standard normals via Phi^{-1}(U^{1/p}); any p >= 1.
SampleSet draw_iid_maxima(double p, std::size_t r, std::uint64_t seed, unsigned workers = 1);

// Single-column CSV plus `<csv>.json` sidecar with the provenance.
void write_sample_set(const std::filesystem::path& csv, const SampleSet& samples);
SampleSet read_sample_set(const std::filesystem::path& csv);

}  // namespace gmax
