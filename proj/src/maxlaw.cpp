#include "gmax/maxlaw.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/erf.hpp>
#include <json.hpp>

#include "gmax/error.hpp"
#include "gmax/parallel.hpp"

namespace gmax {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2 pi))

double log_normal_pdf(double x) noexcept { return -0.5 * x * x - kLogSqrt2Pi; }

void require_p(double p, double min_p) {
  if (!(p >= min_p) || !std::isfinite(p)) {
    throw Error(Errc::POutOfRange, "p must be >= " + std::to_string(min_p));
  }
}

}  // namespace

double normal_pdf(double x) noexcept { return std::exp(log_normal_pdf(x)); }

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_log_cdf(double x) noexcept {
  if (std::isnan(x)) return x;
  if (x == std::numeric_limits<double>::infinity()) return 0.0;
  if (x == -std::numeric_limits<double>::infinity()) return x;
  if (x > 0.0) return std::log1p(-0.5 * std::erfc(x / std::numbers::sqrt2));
  if (x > -30.0) return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2));
  // Mills-ratio series: Phi(x) = phi(x)/|x| (1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8).
  const double r = 1.0 / (x * x);
  const double series = 1.0 - r * (1.0 - 3.0 * r * (1.0 - 5.0 * r * (1.0 - 7.0 * r)));
  return log_normal_pdf(x) - std::log(-x) + std::log(series);
}

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw Error(Errc::InvalidArgument, "quantile level outside (0, 1)");
  if (u > 0.5) return normal_upper_quantile(1.0 - u);
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

double normal_upper_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(Errc::InvalidArgument, "tail level outside (0, 1)");
  return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q);
}

SampleSet::SampleSet(std::vector<double> draws, SeedProvenance provenance)
    : draws_(std::move(draws)), provenance_(std::move(provenance)) {
  if (draws_.empty()) throw Error(Errc::EmptyInput, "sample set needs at least one draw");
  for (double v : draws_) {
    if (!std::isfinite(v)) throw Error(Errc::NonFinite, "sample set draw is not finite");
  }
  std::sort(draws_.begin(), draws_.end());
}

double SampleSet::ecdf(double x) const noexcept {
  const auto it = std::upper_bound(draws_.begin(), draws_.end(), x);
  return static_cast<double>(it - draws_.begin()) / static_cast<double>(draws_.size());
}

double SampleSet::mean() const noexcept {
  long double s = 0.0L;
  for (double v : draws_) s += v;
  return static_cast<double>(s / static_cast<long double>(draws_.size()));
}

double SampleSet::variance() const noexcept {
  if (draws_.size() < 2) return 0.0;
  const double m = mean();
  long double s = 0.0L;
  for (double v : draws_) s += (v - m) * (v - m);
  return static_cast<double>(s / static_cast<long double>(draws_.size() - 1));
}

GumbelCalibration gumbel_calibration(double p) {
  require_p(p, 3.0);
  const double b = std::sqrt(2.0 * std::log(p));
  const double d = b - (std::log(4.0 * std::numbers::pi) + std::log(std::log(p))) / (2.0 * b);
  return {p, b, d};
}

double iid_max_cdf(double x, double p) {
  require_p(p, 1.0);
  return std::exp(p * normal_log_cdf(x));
}

double iid_max_pdf(double x, double p) {
  require_p(p, 1.0);
  if (!std::isfinite(x)) return 0.0;
  return std::exp(std::log(p) + log_normal_pdf(x) + (p - 1.0) * normal_log_cdf(x));
}

double gumbel_cdf(double x) noexcept { return std::exp(-std::exp(-x)); }

double gumbel_pdf(double x) noexcept { return std::exp(-x - std::exp(-x)); }

double gumbel_approx_density(double x, double p) {
  const GumbelCalibration g = gumbel_calibration(p);
  const double y = g.d + x / g.b;
  return std::exp(std::log(p / g.b) + log_normal_pdf(y) + (p - 1.0) * normal_log_cdf(y));
}

double max_density_bivariate(double x, double rho) {
  if (!(rho > -1.0 && rho < 1.0)) {
    throw Error(Errc::RhoOutOfRange, "bivariate max density needs -1 < rho < 1");
  }
  return 2.0 * normal_pdf(x) * normal_cdf(x * std::sqrt((1.0 - rho) / (1.0 + rho)));
}

double levy_concentration(const SampleSet& samples, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(Errc::NonPositiveEpsilon, "epsilon must be positive");
  const auto d = samples.draws();
  const double width = 2.0 * epsilon;
  std::size_t best = 0;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < d.size(); ++lo) {
    if (hi < lo) hi = lo;
    const double right = d[lo] + width;
    while (hi < d.size() && d[hi] <= right) ++hi;
    best = std::max(best, hi - lo);
    if (hi == d.size()) break;
  }
  return static_cast<double>(best) / static_cast<double>(d.size());
}

double kolmogorov_distance(const SampleSet& a, const SampleSet& b) {
  const auto x = a.draws();
  const auto y = b.draws();
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double best = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

double kolmogorov_distance(const SampleSet& a, const std::function<double(double)>& cdf) {
  const auto x = a.draws();
  const double n = static_cast<double>(x.size());
  double best = 0.0;
  std::size_t i = 0;
  while (i < x.size()) {
    std::size_t k = i;
    while (k < x.size() && x[k] == x[i]) ++k;
    const double f = cdf(x[i]);
    const double before = static_cast<double>(i) / n;
    const double after = static_cast<double>(k) / n;
    best = std::max({best, std::abs(after - f), std::abs(f - before)});
    i = k;
  }
  return best;
}

MonotoneCheckReport monotone_density_factor_check(std::span<const double> rho_grid,
                                                  std::span<const double> x_grid,
                                                  std::span<const double> mu_grid) {
  std::vector<double> xs(x_grid.begin(), x_grid.end());
  std::sort(xs.begin(), xs.end());
  MonotoneCheckReport report;
  for (double rho : rho_grid) {
    if (!(rho >= -1.0 && rho <= 1.0)) throw Error(Errc::RhoOutOfRange, "correlation outside [-1, 1]");
    const double cond_sd = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    for (double mu : mu_grid) {
      if (!(mu >= 0.0)) throw Error(Errc::InvalidArgument, "mean of W0 must be >= 0");
      double previous = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        // W1 | W0 = x ~ N(rho (x - mu), 1 - rho^2)
        const double slack = x - rho * (x - mu);
        const double conditional =
            cond_sd > 0.0 ? normal_cdf(slack / cond_sd) : (slack >= 0.0 ? 1.0 : 0.0);
        const double value = std::exp(mu * x - 0.5 * mu * mu) * conditional;
        if (i > 0 && previous - value > report.max_decrease) {
          report.max_decrease = previous - value;
          report.worst_rho = rho;
          report.worst_mu = mu;
          report.worst_x = x;
        }
        previous = value;
        ++report.points;
      }
    }
  }
  return report;
}

namespace {

std::size_t block_count(std::size_t r) { return (r + kDrawBlock - 1) / kDrawBlock; }

std::size_t block_rows(std::size_t r, std::size_t b) {
  return std::min(kDrawBlock, r - b * kDrawBlock);
}

}  // namespace

MaximaDraws draw_maxima_with_standardized(const CovarianceSpec& spec, std::size_t r,
                                          std::uint64_t seed, unsigned workers) {
  if (r == 0) throw Error(Errc::InvalidArgument, "replicate count must be positive");
  const auto p = static_cast<Eigen::Index>(spec.dim());
  Vector inv_sigma(p);
  bool any_positive = false;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double s = spec.sigma(static_cast<std::size_t>(j));
    inv_sigma(j) = s > 0.0 ? 1.0 / s : 0.0;
    any_positive = any_positive || s > 0.0;
  }

  std::vector<double> maxima(r);
  std::vector<double> standardized(r);
  parallel_for(block_count(r), workers, [&](std::size_t b) {
    const std::size_t rows = block_rows(r, b);
    GaussianSampler sampler(spec, derive_seed(seed, b));
    const Matrix x = sampler.sample(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      const auto row = x.row(static_cast<Eigen::Index>(i));
      maxima[b * kDrawBlock + i] = row.maxCoeff();
      double best = -std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < p; ++j) {
        if (inv_sigma(j) > 0.0) best = std::max(best, row(j) * inv_sigma(j));
      }
      standardized[b * kDrawBlock + i] = any_positive ? best : 0.0;
    }
  });
  const SeedProvenance prov{seed, std::string(kGeneratorId), ""};
  return {SampleSet(std::move(maxima), prov), SampleSet(std::move(standardized), prov)};
}

SampleSet draw_maxima(const CovarianceSpec& spec, std::size_t r, std::uint64_t seed,
                      unsigned workers) {
  if (r == 0) throw Error(Errc::InvalidArgument, "replicate count must be positive");
  std::vector<double> maxima(r);
  parallel_for(block_count(r), workers, [&](std::size_t b) {
    const std::size_t rows = block_rows(r, b);
    GaussianSampler sampler(spec, derive_seed(seed, b));
    const Vector m = sampler.sample(rows).rowwise().maxCoeff();
    std::copy(m.data(), m.data() + rows, maxima.begin() + static_cast<std::ptrdiff_t>(b * kDrawBlock));
  });
  return SampleSet(std::move(maxima), {seed, std::string(kGeneratorId), ""});
}

SampleSet draw_iid_maxima(double p, std::size_t r, std::uint64_t seed, unsigned workers) {
  require_p(p, 1.0);
  if (r == 0) throw Error(Errc::InvalidArgument, "replicate count must be positive");
  std::vector<double> maxima(r);
  parallel_for(block_count(r), workers, [&](std::size_t b) {
    Rng rng(derive_seed(seed, b));
    const std::size_t rows = block_rows(r, b);
    for (std::size_t i = 0; i < rows; ++i) {
      // P(max <= x) = Phi(x)^p, so max = Phi^{-1}(U^{1/p}); work with the upper tail.
      const double tail = -std::expm1(std::log(rng.uniform()) / p);
      maxima[b * kDrawBlock + i] = normal_upper_quantile(tail);
    }
  });
  return SampleSet(std::move(maxima), {seed, std::string(kGeneratorId), ""});
}

void write_sample_set(const std::filesystem::path& csv, const SampleSet& samples) {
  {
    std::ofstream out(csv);
    if (!out) throw Error(Errc::IoError, "cannot write " + csv.string());
    char buf[32];
    for (double v : samples.draws()) {
      std::snprintf(buf, sizeof buf, "%.17g\n", v);
      out << buf;
    }
  }
  nlohmann::json side;
  side["seed"] = samples.provenance().seed;
  side["generator"] = samples.provenance().generator;
  side["experiment"] = samples.provenance().experiment;
  side["count"] = samples.size();
  std::ofstream out(csv.string() + ".json");
  if (!out) throw Error(Errc::IoError, "cannot write sidecar for " + csv.string());
  out << side.dump(2) << '\n';
}

SampleSet read_sample_set(const std::filesystem::path& csv) {
  const Matrix m = read_matrix_csv(csv);
  if (m.cols() != 1) throw Error(Errc::ParseError, csv.string() + ": expected a single column");
  std::vector<double> draws(m.data(), m.data() + m.size());
  SeedProvenance prov;
  std::ifstream side(csv.string() + ".json");
  if (side) {
    try {
      const auto j = nlohmann::json::parse(side);
      prov.seed = j.value("seed", std::uint64_t{0});
      prov.generator = j.value("generator", std::string{});
      prov.experiment = j.value("experiment", std::string{});
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::ParseError, csv.string() + ".json: " + e.what());
    }
  }
  return SampleSet(std::move(draws), std::move(prov));
}

}  // namespace gmax
