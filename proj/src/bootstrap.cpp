#include "gmax/bootstrap.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <vector>

#include <json.hpp>

#include "gmax/error.hpp"
#include "gmax/parallel.hpp"
#include "gmax/random.hpp"

namespace gmax {

static_assert(std::endian::native == std::endian::little, "binary datasets assume little-endian");

Dataset::Dataset(Matrix z) : z_(std::move(z)) {
  if (z_.rows() == 0 || z_.cols() == 0) throw Error(Errc::EmptyData, "dataset has no observations");
  if (!z_.allFinite()) throw Error(Errc::NonFinite, "dataset contains non-finite values");
  second_moments_ = (z_.transpose() * z_) / static_cast<double>(z_.rows());
}

namespace {

Dataset load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  char magic[5];
  std::uint64_t dims[2];
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(dims), sizeof dims);
  if (!in || std::string_view(magic, sizeof magic) != kBinaryMagic) {
    throw Error(Errc::ParseError, path.string() + ": bad binary header");
  }
  const std::uint64_t n = dims[0];
  const std::uint64_t p = dims[1];
  if (n == 0 || p == 0) throw Error(Errc::EmptyData, path.string() + ": no observations");
  if (p > std::numeric_limits<std::uint32_t>::max() || n > (1ULL << 40) / p) {
    throw Error(Errc::ParseError, path.string() + ": implausible dimensions");
  }
  Matrix z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  in.read(reinterpret_cast<char*>(z.data()), static_cast<std::streamsize>(n * p * sizeof(double)));
  if (!in) throw Error(Errc::ParseError, path.string() + ": truncated payload");
  return Dataset(std::move(z));
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& path, DataFormat format) {
  if (format == DataFormat::Auto) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
    char head[5] = {};
    in.read(head, sizeof head);
    const bool binary = in.gcount() == 5 && std::string_view(head, 5) == kBinaryMagic;
    format = binary ? DataFormat::Binary : DataFormat::Csv;
  }
  if (format == DataFormat::Binary) return load_binary(path);
  return Dataset(read_matrix_csv(path));
}

void save_dataset_binary(const std::filesystem::path& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  const std::uint64_t dims[2] = {ds.n(), ds.p()};
  out.write(kBinaryMagic.data(), static_cast<std::streamsize>(kBinaryMagic.size()));
  out.write(reinterpret_cast<const char*>(dims), sizeof dims);
  out.write(reinterpret_cast<const char*>(ds.z().data()),
            static_cast<std::streamsize>(ds.z().size() * sizeof(double)));
  if (!out) throw Error(Errc::IoError, "short write to " + path.string());
}

void save_dataset_csv(const std::filesystem::path& path, const Dataset& ds) {
  write_matrix_csv(path, ds.z());
}

Vector normalized_sum(const Dataset& ds) {
  return ds.z().colwise().sum().transpose() / std::sqrt(static_cast<double>(ds.n()));
}

double delta_hat(const Dataset& ds, const Matrix& reference) {
  if (reference.rows() != ds.second_moments().rows() ||
      reference.cols() != ds.second_moments().cols()) {
    throw Error(Errc::DimensionMismatch, "reference covariance has the wrong shape");
  }
  return max_entry_gap(ds.second_moments(), reference);
}

SampleSet multiplier_replicates(const Dataset& ds, std::size_t r, std::uint64_t seed,
                                ReplicatePath path, unsigned workers) {
  if (r == 0) throw Error(Errc::InvalidArgument, "replicate count must be positive");
  if (path == ReplicatePath::Covariance) {
    return draw_maxima(build_covariance(ds.second_moments()), r, seed, workers);
  }
  const auto n = static_cast<Eigen::Index>(ds.n());
  const double scale = 1.0 / std::sqrt(static_cast<double>(ds.n()));
  std::vector<double> maxima(r);
  const std::size_t blocks = (r + kDrawBlock - 1) / kDrawBlock;
  parallel_for(blocks, workers, [&](std::size_t b) {
    const std::size_t rows = std::min(kDrawBlock, r - b * kDrawBlock);
    Rng rng(derive_seed(seed, b));
    Matrix eta(static_cast<Eigen::Index>(rows), n);
    rng.fill_normal({eta.data(), static_cast<std::size_t>(eta.size())});
    const Vector m = ((eta * ds.z()) * scale).rowwise().maxCoeff();
    std::copy(m.data(), m.data() + rows, maxima.begin() + static_cast<std::ptrdiff_t>(b * kDrawBlock));
  });
  return SampleSet(std::move(maxima), {seed, std::string(kGeneratorId), ""});
}

SampleSet gaussian_analog_replicates(const CovarianceSpec& cov, std::size_t r, std::uint64_t seed,
                                     unsigned workers) {
  return draw_maxima(cov, r, seed, workers);
}

double bootstrap_quantile(const SampleSet& replicates, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::AlphaOutOfRange, "alpha must lie in (0, 1)");
  const double r = static_cast<double>(replicates.size());
  // The guard keeps exact products such as 0.95 * 1000 from rounding up a rank.
  auto k = static_cast<std::size_t>(std::ceil((1.0 - alpha) * r - 1e-9));
  k = std::clamp<std::size_t>(k, 1, replicates.size());
  return replicates.draws()[k - 1];
}

double bootstrap_quantile(const BootstrapRun& run, double alpha) {
  return bootstrap_quantile(run.replicates, alpha);
}

double ks_noise_allowance(std::size_t r) noexcept {
  return 2.0 * 1.36 / std::sqrt(static_cast<double>(r));
}

CmcltReport cmclt_check(const Dataset& ds, const CovarianceSpec& true_cov, std::size_t r,
                        std::uint64_t seed, double c, unsigned workers) {
  if (r < 1000) throw Error(Errc::InvalidArgument, "cmclt_check needs at least 1000 replicates");
  if (true_cov.dim() != ds.p()) throw Error(Errc::DimensionMismatch, "covariance and data differ in p");
  const BootstrapSeeds seeds{derive_seed(seed, 0), derive_seed(seed, 1)};
  SampleSet reps = multiplier_replicates(ds, r, seeds.multiplier, ReplicatePath::Covariance, workers);
  SampleSet analog = gaussian_analog_replicates(true_cov, r, *seeds.analog, workers);
  const double dh = delta_hat(ds, true_cov.entries());
  // The shape needs log p > 0; a scalar statistic is scored as p = 2.
  const double p_eff = std::max<double>(static_cast<double>(ds.p()), 2.0);

  CmcltReport report{.distance = kolmogorov_distance(reps, analog),
                     .delta_hat = dh,
                     .shape_bound = kolmogorov_shape(dh, p_eff, c),
                     .noise_allowance = ks_noise_allowance(r),
                     .within_prediction = false,
                     .run = BootstrapRun{std::move(reps), std::move(analog), dh, seeds}};
  report.within_prediction = report.distance <= report.shape_bound.value + report.noise_allowance;
  return report;
}

void write_bootstrap_run(const std::filesystem::path& dir, const BootstrapRun& run,
                         std::span<const double> alphas) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + dir.string() + ": " + ec.message());
  write_sample_set(dir / "replicates.csv", run.replicates);
  if (run.gaussian_analog) write_sample_set(dir / "gaussian_analog.csv", *run.gaussian_analog);

  nlohmann::json manifest;
  manifest["replicates"] = run.replicates.size();
  manifest["generator"] = std::string(kGeneratorId);
  manifest["seeds"]["multiplier"] = run.seeds.multiplier;
  manifest["seeds"]["analog"] = run.seeds.analog ? nlohmann::json(*run.seeds.analog) : nlohmann::json();
  manifest["delta_hat"] = run.delta_hat ? nlohmann::json(*run.delta_hat) : nlohmann::json();
  manifest["quantiles"] = nlohmann::json::array();
  for (double a : alphas) {
    manifest["quantiles"].push_back({{"alpha", a}, {"value", bootstrap_quantile(run, a)}});
  }
  std::ofstream out(dir / "manifest.json");
  if (!out) throw Error(Errc::IoError, "cannot write manifest in " + dir.string());
  out << manifest.dump(2) << '\n';
}

GeneratedData generate_gaussian_data(const CovarianceSpec& cov, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(Errc::EmptyData, "sample size must be positive");
  GaussianSampler sampler(cov, seed);
  return {Dataset(sampler.sample(n)), cov.entries()};
}

GeneratedData generate_case_a_data(std::size_t n, std::size_t p, std::uint64_t seed) {
  if (n == 0 || p == 0) throw Error(Errc::EmptyData, "sample size and dimension must be positive");
  Rng rng(seed);
  Matrix z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  const double scale = 1.0 / std::numbers::sqrt2;  // Laplace(b) has variance 2 b^2
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double u = rng.uniform() - 0.5;
    z.data()[i] = -scale * std::copysign(1.0, u) * std::log1p(-2.0 * std::abs(u));
  }
  const auto pp = static_cast<Eigen::Index>(p);
  return {Dataset(std::move(z)), Matrix::Identity(pp, pp)};
}

GeneratedData generate_case_b_data(std::size_t n, std::size_t p, double bn, double q,
                                   std::uint64_t seed) {
  if (n < 2 || p == 0) throw Error(Errc::EmptyData, "case (b) needs n >= 2 and p >= 1");
  const double nd = static_cast<double>(n);
  if (!(bn >= 1.0 && bn * bn <= nd)) throw Error(Errc::InvalidArgument, "need 1 <= bn <= sqrt(n)");
  if (!(q >= 0.5) || !std::isfinite(q)) throw Error(Errc::InvalidArgument, "need q >= 1/2");

  Rng rng(seed);
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(p);

  // Regressors: m leverage rows at |x| = bn, the rest at a so that the column
  // mean square is exactly one.
  const std::size_t m = std::max<std::size_t>(1, static_cast<std::size_t>(nd / (2.0 * bn * bn)));
  const double md = static_cast<double>(m);
  const double a = std::sqrt((nd - md * bn * bn) / (nd - md));
  Matrix x(rows, cols);
  std::vector<std::size_t> order(n);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.next() % (i + 1)]);
    for (std::size_t k = 0; k < n; ++k) {
      const double magnitude = k < m ? bn : a;
      const double sign = (rng.next() >> 63) != 0 ? 1.0 : -1.0;
      x(static_cast<Eigen::Index>(order[k]), j) = sign * magnitude;
    }
  }

  // Student-t errors with df = floor(4q) + 1 > 4q, rescaled to unit variance.
  const int df = static_cast<int>(std::floor(4.0 * q)) + 1;
  const double unit = std::sqrt((df - 2.0) / df);
  Matrix z(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    double chi2 = 0.0;
    for (int k = 0; k < df; ++k) {
      const double g = rng.normal();
      chi2 += g * g;
    }
    const double e = unit * rng.normal() / std::sqrt(chi2 / df);
    z.row(i) = e * x.row(i);
  }
  Matrix population = (x.transpose() * x) / nd;
  return {Dataset(std::move(z)), std::move(population)};
}

}  // namespace gmax
