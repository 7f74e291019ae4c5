#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gmax/error.hpp"
#include "gmax/gaussian_core.hpp"
#include "gmax/maxlaw.hpp"

namespace {

using gmax::Errc;
using gmax::SampleSet;

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const gmax::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected gmax::Error";
  return Errc::InvalidArgument;
}

TEST(Normal, CdfAndTails) {
  EXPECT_DOUBLE_EQ(gmax::normal_cdf(0), 0.5);
  EXPECT_NEAR(gmax::normal_cdf(1.959963984540054), 0.975, 1e-15);
  EXPECT_NEAR(gmax::normal_pdf(0), 0.3989422804014327, 1e-16);
  EXPECT_NEAR(gmax::normal_log_cdf(-40), -804.6084420137539, 1e-9);
  EXPECT_NEAR(gmax::normal_log_cdf(-10), std::log(7.6198530241604696e-24), 1e-12);
  EXPECT_NEAR(gmax::normal_log_cdf(10), -7.6198530241604696e-24, 1e-30);
  EXPECT_TRUE(std::isfinite(gmax::normal_log_cdf(-1e3)));
}

TEST(Normal, QuantileRoundTrip) {
  for (double u : {1e-300, 1e-12, 0.01, 0.3, 0.5, 0.9, 1 - 1e-12}) {
    EXPECT_NEAR(gmax::normal_cdf(gmax::normal_quantile(u)) / u, 1.0, 1e-10) << u;
  }
  EXPECT_NEAR(gmax::normal_upper_quantile(1e-20), -gmax::normal_quantile(1e-20), 1e-12);
  EXPECT_EQ(code_of([] { gmax::normal_quantile(0); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { gmax::normal_upper_quantile(1); }), Errc::InvalidArgument);
}

TEST(IidMax, CdfAndDensity) {
  EXPECT_DOUBLE_EQ(gmax::iid_max_cdf(0, 2), 0.25);
  EXPECT_NEAR(gmax::iid_max_pdf(0, 1), gmax::normal_pdf(0), 1e-16);
  auto f100 = [](double x) { return gmax::iid_max_pdf(x, 100); };
  EXPECT_NEAR((boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f100, -10.0, 10.0, 15, 1e-13)), 1.0,
              1e-10);
  for (double p : {2.0, 10.0, 100.0}) {
    for (double x : {-1.0, 0.5, 2.0, 3.5}) {
      const double h = 1e-6;
      const double fd = (gmax::iid_max_cdf(x + h, p) - gmax::iid_max_cdf(x - h, p)) / (2 * h);
      EXPECT_NEAR(fd, gmax::iid_max_pdf(x, p), 1e-7) << p << " " << x;
    }
  }
  EXPECT_EQ(code_of([] { gmax::iid_max_cdf(0, 0.5); }), Errc::POutOfRange);
}

TEST(Gumbel, Calibration) {
  const auto c = gmax::gumbel_calibration(100);
  EXPECT_NEAR(c.b, 3.0348542587702927, 1e-15);
  EXPECT_NEAR(c.d, 2.366254792906394, 1e-14);
  double prev = 0;
  for (double p : {3.0, 10.0, 1e3, 1e6, 1e12}) {
    const auto g = gmax::gumbel_calibration(p);
    EXPECT_GT(g.b, prev);
    EXPECT_LT(g.d, g.b);
    prev = g.b;
  }
  // At p = e^e, log log p = 1.
  const auto e = gmax::gumbel_calibration(std::exp(std::exp(1.0)));
  EXPECT_NEAR(e.b, std::sqrt(2 * std::exp(1.0)), 1e-14);
  EXPECT_NEAR(e.d, e.b - (std::log(4 * M_PI) + 1) / (2 * e.b), 1e-14);
  EXPECT_EQ(code_of([] { gmax::gumbel_calibration(2); }), Errc::POutOfRange);
}

TEST(Gumbel, DensityGapShrinks) {
  EXPECT_NEAR(gmax::gumbel_cdf(0), std::exp(-1.0), 1e-16);
  EXPECT_NEAR(gmax::gumbel_pdf(0), std::exp(-1.0), 1e-16);
  for (double x : {-1.0, 0.0, 1.0}) {
    double prev = INFINITY;
    for (double p : {1e3, 1e4, 1e5, 1e6}) {
      const double gap = std::abs(gmax::gumbel_approx_density(x, p) - gmax::gumbel_pdf(x));
      EXPECT_LT(gap, prev) << x << " " << p;
      prev = gap;
    }
  }
  // The approach is slow: at p = 1e6 the gap at 0 is still about 0.0214.
  EXPECT_NEAR(std::abs(gmax::gumbel_approx_density(0, 1e6) - std::exp(-1.0)), 0.021379, 5e-6);
  const double cdf_at_d = gmax::iid_max_cdf(gmax::gumbel_calibration(1e6).d, 1e6);
  EXPECT_NEAR(cdf_at_d, 0.39079588656194542, 1e-12);
}

TEST(Bivariate, Density) {
  for (double x : {-2.0, 0.0, 1.3}) {
    EXPECT_NEAR(gmax::max_density_bivariate(x, 0), gmax::iid_max_pdf(x, 2), 1e-15);
    EXPECT_NEAR(gmax::max_density_bivariate(x, 1 - 1e-12), gmax::normal_pdf(x), 1e-5);
  }
  EXPECT_EQ(code_of([] { gmax::max_density_bivariate(0, 1); }), Errc::RhoOutOfRange);

  const auto draws = gmax::draw_maxima(gmax::equicorrelated(2, 0.5), 200000, 91);
  for (double lo : {-1.0, 0.0, 1.0}) {
    const double hi = lo + 0.25;
    const double frac = draws.ecdf(hi) - draws.ecdf(lo);
    auto f = [](double x) { return gmax::max_density_bivariate(x, 0.5); };
    const double prob = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi);
    EXPECT_NEAR(frac, prob, 4 * std::sqrt(prob / 200000.0)) << lo;
  }
  // E max(W1, W2) = sqrt((1 - rho)/pi).
  EXPECT_NEAR(draws.mean(), std::sqrt(0.5 / M_PI), 0.01);
}

TEST(Levy, Concentration) {
  EXPECT_EQ(gmax::levy_concentration(SampleSet({2.0, 2.0, 2.0}), 1e-9), 1.0);
  const SampleSet s({0, 1, 2, 3});
  // Closed window of width 2 eps = 1 holds two adjacent draws.
  EXPECT_EQ(gmax::levy_concentration(s, 0.5), 0.5);
  EXPECT_EQ(gmax::levy_concentration(s, 0.49), 0.25);
  EXPECT_EQ(gmax::levy_concentration(s, 10), 1.0);
  EXPECT_EQ(code_of([&] { gmax::levy_concentration(s, 0); }), Errc::NonPositiveEpsilon);

  const auto draws = gmax::draw_iid_maxima(30, 20000, 5);
  double prev = 0;
  for (double eps : {0.01, 0.02, 0.05, 0.1, 0.3}) {
    const double l = gmax::levy_concentration(draws, eps);
    EXPECT_GE(l, prev);
    EXPECT_LE(gmax::levy_concentration(draws, 2 * eps), 2 * l + 1e-12);
    prev = l;
  }
}

TEST(SampleSetTest, Basics) {
  EXPECT_EQ(code_of([] { SampleSet(std::vector<double>{}); }), Errc::EmptyInput);
  EXPECT_EQ(code_of([] { SampleSet({1.0, NAN}); }), Errc::NonFinite);
  const SampleSet s({3, 1, 2});
  EXPECT_EQ(s.min(), 1);
  EXPECT_EQ(s.max(), 3);
  EXPECT_DOUBLE_EQ(s.ecdf(2), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.mean(), 2);
  EXPECT_DOUBLE_EQ(s.variance(), 1);
  EXPECT_EQ(SampleSet({5.0}).variance(), 0.0);
}

TEST(Kolmogorov, Distance) {
  EXPECT_EQ(gmax::kolmogorov_distance(SampleSet({0.0}), SampleSet({1.0})), 1.0);
  const SampleSet a({0, 1, 2, 3});
  EXPECT_EQ(gmax::kolmogorov_distance(a, a), 0.0);
  EXPECT_DOUBLE_EQ(gmax::kolmogorov_distance(a, SampleSet({1.5})), 0.5);
  // One-sample: a single draw at 0 against Phi is 1/2 from either side.
  EXPECT_DOUBLE_EQ(gmax::kolmogorov_distance(SampleSet({0.0}), [](double x) { return gmax::normal_cdf(x); }), 0.5);

  const auto x = gmax::draw_iid_maxima(1, 1000000, 11);
  EXPECT_LT(gmax::kolmogorov_distance(x, [](double t) { return gmax::normal_cdf(t); }), 0.0043);
  const auto y = gmax::draw_iid_maxima(1, 50000, 12);
  const auto z = gmax::draw_iid_maxima(2, 50000, 13);
  const double xy = gmax::kolmogorov_distance(x, y), yz = gmax::kolmogorov_distance(y, z),
               xz = gmax::kolmogorov_distance(x, z);
  EXPECT_LE(xz, xy + yz + 1e-15);
  EXPECT_NEAR(xz, 0.25, 0.01);
}

TEST(MonotoneCheck, NoDecrease) {
  const std::vector<double> rho{-0.9, -0.5, 0.0, 0.5, 0.9};
  std::vector<double> xs;
  for (int k = 0; k <= 200; ++k) xs.push_back(-5 + 0.05 * k);
  const std::vector<double> mu{0.0, 0.5, 2.0};
  const auto r = gmax::monotone_density_factor_check(rho, xs, mu);
  EXPECT_EQ(r.points, rho.size() * mu.size() * xs.size());
  EXPECT_LE(r.max_decrease, 1e-12);
  const std::vector<double> bad_rho{1.5};
  EXPECT_EQ(code_of([&] { gmax::monotone_density_factor_check(bad_rho, xs, mu); }), Errc::RhoOutOfRange);
  const std::vector<double> bad_mu{-1};
  EXPECT_EQ(code_of([&] { gmax::monotone_density_factor_check(rho, xs, bad_mu); }), Errc::InvalidArgument);
}

TEST(Draws, DeterministicAcrossWorkers) {
  const auto spec = gmax::equicorrelated(20, 0.3);
  const auto a = gmax::draw_maxima(spec, 10000, 42, 1);
  const auto b = gmax::draw_maxima(spec, 10000, 42, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a.draws()[i], b.draws()[i]);
  const auto c = gmax::draw_iid_maxima(1e6, 9000, 42, 1);
  const auto d = gmax::draw_iid_maxima(1e6, 9000, 42, 4);
  for (std::size_t i = 0; i < c.size(); ++i) ASSERT_EQ(c.draws()[i], d.draws()[i]);
  EXPECT_EQ(code_of([&] { gmax::draw_maxima(spec, 0, 1); }), Errc::InvalidArgument);
}

TEST(Draws, StandardizedMaxima) {
  const std::vector<double> var{1.0, 4.0, 9.0};
  const auto spec = gmax::diagonal_covariance(var);
  const auto md = gmax::draw_maxima_with_standardized(spec, 50000, 3);
  EXPECT_NEAR(md.standardized.mean(), 0.8462843753216345, 0.02);
  EXPECT_GT(md.maxima.mean(), md.standardized.mean());
}

TEST(Draws, IidMatchesCdf) {
  for (double p : {1.0, 7.0, 1e4}) {
    const auto s = gmax::draw_iid_maxima(p, 100000, 17);
    const double d = gmax::kolmogorov_distance(s, [p](double x) { return gmax::iid_max_cdf(x, p); });
    EXPECT_LT(d, 1.63 / std::sqrt(100000.0)) << p;
  }
}

TEST(SampleSetIo, RoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "gmax_test_maxlaw";
  std::filesystem::create_directories(dir);
  const SampleSet s({0.1, -2.5, 1e-17, 3.141592653589793}, {99, "draw_iid_maxima", "unit"});
  gmax::write_sample_set(dir / "s.csv", s);
  const auto t = gmax::read_sample_set(dir / "s.csv");
  ASSERT_EQ(t.size(), s.size());
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(t.draws()[i], s.draws()[i]);
  EXPECT_EQ(t.provenance().seed, 99u);
  EXPECT_EQ(t.provenance().generator, "draw_iid_maxima");
  EXPECT_EQ(t.provenance().experiment, "unit");
  std::filesystem::remove_all(dir);
}

}  // namespace
