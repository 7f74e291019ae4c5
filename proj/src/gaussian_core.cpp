#include "gmax/gaussian_core.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gmax/error.hpp"

namespace gmax {

double CovarianceSpec::sigma(std::size_t j) const {
  return std::sqrt(std::max(state_->entries(j, j), 0.0));
}

CovarianceSpec build_covariance(const Matrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw Error(Errc::NonSquare, "covariance must be a non-empty square matrix, got " +
                                     std::to_string(entries.rows()) + "x" +
                                     std::to_string(entries.cols()));
  }
  if (!entries.allFinite()) throw Error(Errc::NonFinite, "covariance has non-finite entries");

  const Eigen::Index p = entries.rows();
  Matrix sym = 0.5 * (entries + entries.transpose());

  const double max_diag = sym.diagonal().maxCoeff();
  const double tol = kPivotTolerance * std::max(max_diag, 0.0);

  Matrix factor = Matrix::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double* lj = factor.row(j).data();
    double pivot = sym(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= lj[k] * lj[k];
    if (pivot < -tol) {
      throw Error(Errc::NotPSD, "pivot " + std::to_string(pivot) + " at index " +
                                    std::to_string(j) + " below tolerance");
    }
    const double ljj = pivot <= tol ? 0.0 : std::sqrt(pivot);
    factor(j, j) = ljj;
    if (ljj == 0.0) continue;
    for (Eigen::Index i = j + 1; i < p; ++i) {
      const double* li = factor.row(i).data();
      double s = sym(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= li[k] * lj[k];
      factor(i, j) = s / ljj;
    }
  }

  // Clamped pivots are only legitimate when the remaining Schur complement
  // really vanishes; otherwise the matrix was indefinite.
  const double scale = sym.cwiseAbs().maxCoeff();
  Matrix recon;
  recon.noalias() = factor * factor.transpose();
  const double err = (recon - sym).cwiseAbs().maxCoeff();
  if (err > kReconstructionTolerance * scale) {
    throw Error(Errc::NotPSD, "factor reconstruction error " + std::to_string(err));
  }

  auto state = std::make_shared<CovarianceSpec::State>();
  state->entries = std::move(sym);
  state->factor = std::move(factor);
  const Vector sigmas = state->entries.diagonal().cwiseMax(0.0).cwiseSqrt();
  state->sigma_min = sigmas.minCoeff();
  state->sigma_max = sigmas.maxCoeff();
  return CovarianceSpec(std::move(state));
}

CovarianceSpec equicorrelated(std::size_t p, double rho) {
  if (p == 0) throw Error(Errc::InvalidArgument, "dimension must be positive");
  const double lower = p > 1 ? -1.0 / static_cast<double>(p - 1) : -1.0;
  if (!(rho >= lower && rho <= 1.0)) {
    throw Error(Errc::RhoOutOfRange, "rho " + std::to_string(rho) + " outside [" +
                                         std::to_string(lower) + ", 1]");
  }
  const auto n = static_cast<Eigen::Index>(p);
  Matrix m = Matrix::Constant(n, n, rho);
  m.diagonal().setOnes();
  return build_covariance(m);
}

CovarianceSpec diagonal_covariance(std::span<const double> variances) {
  const auto n = static_cast<Eigen::Index>(variances.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) m(j, j) = variances[static_cast<std::size_t>(j)];
  return build_covariance(m);
}

double max_entry_gap(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::DimensionMismatch, "matrices differ in shape");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double max_covariance_gap(const CovarianceSpec& a, const CovarianceSpec& b) {
  if (a.dim() != b.dim()) {
    throw Error(Errc::DimensionMismatch, "covariance dimensions " + std::to_string(a.dim()) +
                                             " and " + std::to_string(b.dim()));
  }
  return max_entry_gap(a.entries(), b.entries());
}

GaussianSampler::GaussianSampler(CovarianceSpec spec, std::uint64_t seed)
    : spec_(std::move(spec)), rng_(seed) {}

Matrix GaussianSampler::sample(std::size_t n_draws) {
  if (n_draws == 0) throw Error(Errc::InvalidArgument, "n_draws must be positive");
  const auto p = static_cast<Eigen::Index>(spec_.dim());
  Matrix z(static_cast<Eigen::Index>(n_draws), p);
  rng_.fill_normal(std::span<double>(z.data(), static_cast<std::size_t>(z.size())));
  Matrix x(z.rows(), p);
  x.noalias() = z * spec_.factor().transpose().triangularView<Eigen::Upper>();
  return x;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Matrix parse_matrix_csv(std::istream& in, std::string_view source) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::size_t fields = 0;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const std::string t = trim(cell);
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(t.c_str(), &end);
      if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
        throw Error(Errc::ParseError, std::string(source) + ":" + std::to_string(line_no) +
                                          ": cannot parse '" + t + "'");
      }
      if (!std::isfinite(v)) {
        throw Error(Errc::NonFinite, std::string(source) + ":" + std::to_string(line_no) +
                                         ": non-finite value");
      }
      values.push_back(v);
      ++fields;
    }
    if (!line.empty() && line.back() == ',') {
      throw Error(Errc::ParseError,
                  std::string(source) + ":" + std::to_string(line_no) + ": trailing comma");
    }
    if (rows == 0) {
      cols = fields;
    } else if (fields != cols) {
      throw Error(Errc::ParseError, std::string(source) + ":" + std::to_string(line_no) +
                                        ": expected " + std::to_string(cols) + " fields, got " +
                                        std::to_string(fields));
    }
    ++rows;
  }
  if (rows == 0) throw Error(Errc::EmptyData, std::string(source) + ": no data rows");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::copy(values.begin(), values.end(), m.data());
  return m;
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  return parse_matrix_csv(in, path.string());
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace gmax
