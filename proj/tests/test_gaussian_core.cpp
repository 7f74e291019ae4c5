#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "gmax/error.hpp"
#include "gmax/gaussian_core.hpp"
#include "gmax/random.hpp"

namespace {

using gmax::Errc;
using gmax::Matrix;

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const gmax::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected gmax::Error";
  return Errc::InvalidArgument;
}

Matrix random_psd(std::size_t p, std::uint64_t seed) {
  gmax::Rng rng(seed);
  const auto n = static_cast<Eigen::Index>(p);
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
  return a * a.transpose() / static_cast<double>(p);
}

TEST(BuildCovariance, IdentityFactorIsIdentity) {
  const auto spec = gmax::build_covariance(Matrix::Identity(3, 3));
  EXPECT_EQ(spec.factor(), Matrix::Identity(3, 3));
  EXPECT_EQ(spec.sigma_min(), 1.0);
  EXPECT_TRUE(spec.equal_variances());
}

TEST(BuildCovariance, HandCholesky2x2) {
  Matrix m(2, 2);
  m << 1, 0.5, 0.5, 1;
  const auto spec = gmax::build_covariance(m);
  EXPECT_DOUBLE_EQ(spec.factor()(1, 0), 0.5);
  EXPECT_NEAR(spec.factor()(1, 1), 0.86602540378443865, 1e-15);
  EXPECT_EQ(spec.factor()(0, 1), 0.0);
}

TEST(BuildCovariance, Errors) {
  Matrix indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  EXPECT_EQ(code_of([&] { gmax::build_covariance(indefinite); }), Errc::NotPSD);
  EXPECT_EQ(code_of([] { gmax::build_covariance(Matrix::Zero(2, 3)); }), Errc::NonSquare);
  EXPECT_EQ(code_of([] { gmax::build_covariance(Matrix(0, 0)); }), Errc::NonSquare);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = std::nan("");
  EXPECT_EQ(code_of([&] { gmax::build_covariance(bad); }), Errc::NonFinite);
}

TEST(BuildCovariance, SymmetrizesBeforeValidation) {
  Matrix m(2, 2);
  m << 1, 0.2, 0.4, 1;
  const auto spec = gmax::build_covariance(m);
  EXPECT_EQ(spec.entries()(0, 1), spec.entries()(1, 0));
  EXPECT_DOUBLE_EQ(spec.entries()(0, 1), 0.3);
}

TEST(BuildCovariance, RankDeficientIsAccepted) {
  // Perfectly correlated and perfectly anti-correlated coordinates.
  Matrix m(3, 3);
  m << 1, 1, -1, 1, 1, -1, -1, -1, 1;
  const auto spec = gmax::build_covariance(m);
  const Matrix l = spec.factor();
  EXPECT_LE((l * l.transpose() - m).cwiseAbs().maxCoeff(), 1e-12);
  gmax::GaussianSampler s(spec, 3);
  const Matrix x = s.sample(100);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    EXPECT_DOUBLE_EQ(x(i, 0), x(i, 1));
    EXPECT_DOUBLE_EQ(x(i, 0), -x(i, 2));
  }
}

TEST(BuildCovariance, TinyNegativePivotClamped) {
  Matrix m(2, 2);
  m << 1, 1, 1, 1 - 1e-13;
  EXPECT_NO_THROW(gmax::build_covariance(m));
  m(1, 1) = 1 - 1e-6;
  m(0, 1) = m(1, 0) = 1.0;
  EXPECT_EQ(code_of([&] { gmax::build_covariance(m); }), Errc::NotPSD);
}

TEST(BuildCovariance, ReconstructionInvariant) {
  for (std::size_t p : {1, 2, 7, 40}) {
    const Matrix m = random_psd(p, 100 + p);
    const auto spec = gmax::build_covariance(m);
    const Matrix l = spec.factor();
    EXPECT_LE((l * l.transpose() - spec.entries()).cwiseAbs().maxCoeff(),
              1e-8 * spec.entries().cwiseAbs().maxCoeff());
    EXPECT_EQ(l.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Equicorrelated, Construction) {
  EXPECT_EQ(gmax::equicorrelated(2, 0.0).entries(), Matrix::Identity(2, 2));
  const auto edge = gmax::equicorrelated(3, -0.5);
  EXPECT_DOUBLE_EQ(edge.entries()(0, 2), -0.5);
  EXPECT_EQ(code_of([] { gmax::equicorrelated(2, -1.5); }), Errc::RhoOutOfRange);
  EXPECT_EQ(code_of([] { gmax::equicorrelated(4, 1.01); }), Errc::RhoOutOfRange);
  EXPECT_EQ(code_of([] { gmax::equicorrelated(4, -0.34); }), Errc::RhoOutOfRange);
  EXPECT_NO_THROW(gmax::equicorrelated(1, 0.9));
  EXPECT_NO_THROW(gmax::equicorrelated(5, 1.0));
}

TEST(MaxCovarianceGap, Examples) {
  const auto a = gmax::equicorrelated(2, 0.0);
  EXPECT_EQ(gmax::max_covariance_gap(a, a), 0.0);
  EXPECT_DOUBLE_EQ(gmax::max_covariance_gap(a, gmax::equicorrelated(2, 0.3)), 0.3);
  const std::vector<double> v1{1.0, 1.0};
  const std::vector<double> v2{1.2, 0.9};
  EXPECT_NEAR(gmax::max_covariance_gap(gmax::diagonal_covariance(v1), gmax::diagonal_covariance(v2)), 0.2, 1e-15);
  EXPECT_EQ(code_of([&] { gmax::max_covariance_gap(a, gmax::equicorrelated(3, 0.0)); }), Errc::DimensionMismatch);
}

TEST(MaxCovarianceGap, Pseudometric) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto a = gmax::build_covariance(random_psd(4, 3 * t));
    const auto b = gmax::build_covariance(random_psd(4, 3 * t + 1));
    const auto c = gmax::build_covariance(random_psd(4, 3 * t + 2));
    const double ab = gmax::max_covariance_gap(a, b);
    EXPECT_EQ(ab, gmax::max_covariance_gap(b, a));
    EXPECT_LE(gmax::max_covariance_gap(a, c), ab + gmax::max_covariance_gap(b, c) + 1e-15);
    EXPECT_GE(ab, 0.0);
  }
}

TEST(Sampler, ZeroCovarianceGivesZeros) {
  gmax::GaussianSampler s(gmax::build_covariance(Matrix::Zero(3, 3)), 1);
  EXPECT_EQ(s.sample(10).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Sampler, Deterministic) {
  const auto spec = gmax::equicorrelated(5, 0.3);
  gmax::GaussianSampler a(spec, 42), b(spec, 42), c(spec, 43);
  const Matrix xa = a.sample(200);
  EXPECT_EQ(xa, b.sample(200));
  EXPECT_NE(xa, c.sample(200));
  EXPECT_THROW(a.sample(0), gmax::Error);
}

TEST(Sampler, IdentityVarianceBand) {
  gmax::GaussianSampler s(gmax::equicorrelated(3, 0.0), 7);
  const Matrix x = s.sample(1000000);
  for (Eigen::Index j = 0; j < 3; ++j) {
    const double var = x.col(j).squaredNorm() / static_cast<double>(x.rows());
    EXPECT_GE(var, 0.994);
    EXPECT_LE(var, 1.006);
  }
}

TEST(Sampler, CovarianceConvergence) {
  const auto spec = gmax::build_covariance(random_psd(4, 11) + 0.2 * Matrix::Identity(4, 4));
  const Matrix& s = spec.entries();
  double scale = 0.0;
  for (Eigen::Index j = 0; j < 4; ++j) {
    for (Eigen::Index k = 0; k < 4; ++k) scale = std::max(scale, s(j, j) * s(k, k) + s(j, k) * s(j, k));
  }
  std::uint64_t seed = 5;
  for (std::size_t n : {10000, 100000, 1000000}) {
    gmax::GaussianSampler sampler(spec, seed++);
    const Matrix x = sampler.sample(n);
    const Matrix emp = x.transpose() * x / static_cast<double>(n);
    EXPECT_LE((emp - s).cwiseAbs().maxCoeff(), 5.0 * std::sqrt(scale / static_cast<double>(n))) << n;
  }
}

TEST(Csv, ParseAndRoundTrip) {
  std::istringstream in("1,2.5\n\n-3e-2, 4\n");
  const Matrix m = gmax::parse_matrix_csv(in);
  ASSERT_EQ(m.rows(), 2);
  ASSERT_EQ(m.cols(), 2);
  EXPECT_EQ(m(1, 0), -3e-2);
  EXPECT_EQ(m(1, 1), 4.0);

  const auto path = std::filesystem::temp_directory_path() / "gmax_csv_roundtrip.csv";
  Matrix r(2, 3);
  r << 0.1, 1.0 / 3.0, -2e-300, 1e300, 5, -0.0;
  gmax::write_matrix_csv(path, r);
  EXPECT_EQ(gmax::read_matrix_csv(path), r);
  std::filesystem::remove(path);
}

TEST(Csv, Errors) {
  const auto parse = [](const char* text) {
    std::istringstream in(text);
    return gmax::parse_matrix_csv(in);
  };
  EXPECT_EQ(code_of([&] { parse("1,2\n3\n"); }), Errc::ParseError);
  EXPECT_EQ(code_of([&] { parse("1,abc\n"); }), Errc::ParseError);
  EXPECT_EQ(code_of([&] { parse("1,2,\n"); }), Errc::ParseError);
  EXPECT_EQ(code_of([&] { parse("1,inf\n"); }), Errc::NonFinite);
  EXPECT_EQ(code_of([&] { parse("\n\n"); }), Errc::EmptyData);
  try {
    parse("1,2\n3,4\n5\n");
  } catch (const gmax::Error& e) {
    EXPECT_NE(std::string(e.what()).find(":3"), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of([] { gmax::read_matrix_csv("/nonexistent/gmax.csv"); }), Errc::IoError);
}

}  // namespace
