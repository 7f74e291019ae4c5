#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "gmax/bounds.hpp"
#include "gmax/error.hpp"
#include "gmax/maxlaw.hpp"
#include "gmax/smoothmax.hpp"

namespace {

using gmax::Errc;
using gmax::FormulaId;

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

const double kG1 = 1.875;
const double kG2 = 10.0 / std::sqrt(3.0);

TEST(ComparisonSmooth, Examples) {
  EXPECT_EQ(gmax::comparison_smooth(1, 1, 0, 3).value, 0.0);
  EXPECT_DOUBLE_EQ(gmax::comparison_smooth(1, 1, 0.1, 2).value, 0.25);
  EXPECT_NEAR(gmax::comparison_smooth(kG1, kG2, 0.01, 10).value, 0.21636751345948129, 1e-15);
  EXPECT_EQ(code_of([] { gmax::comparison_smooth(-1, 1, 0.1, 1); }), Errc::NegativeInput);
  EXPECT_EQ(code_of([] { gmax::comparison_smooth(1, 1, 0.1, 0); }), Errc::NegativeInput);
}

TEST(ComparisonMax, Examples) {
  EXPECT_DOUBLE_EQ(gmax::comparison_max(1, 1, 0.1, 2, 1).value, gmax::comparison_smooth(1, 1, 0.1, 2).value);
  EXPECT_NEAR(gmax::comparison_max(1, 0, 0, 1, std::exp(1.0)).value, 2.0, 1e-15);
  const double beta = std::sqrt(2 * std::log(100.0) / 0.04);
  EXPECT_NEAR(gmax::comparison_max(1, 1, 0.04, beta, 100).value, gmax::comparison_optimized(1, 1, 0.04, 100).value,
              1e-12);
  EXPECT_EQ(code_of([] { gmax::comparison_max(1, 1, 0.1, 1, 0.5); }), Errc::POutOfRange);
}

TEST(ComparisonOptimized, ClosedFormAndGridMinimum) {
  EXPECT_EQ(gmax::comparison_optimized(1, 1, 0, 100).value, 0.0);
  EXPECT_NEAR(gmax::comparison_optimized(1, 0, 0.01, 100).value, 0.60697085175405854, 1e-15);
  EXPECT_NEAR(gmax::comparison_optimized(1, 1, 0.04, 100).value, 1.2339417035081171, 1e-15);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 200000; ++k) {
    const double beta = std::pow(10.0, -2.0 + 5.0 * k / 200000.0);
    best = std::min(best, gmax::comparison_max(1, 1, 0.04, beta, 100).value);
  }
  EXPECT_NEAR(best, gmax::comparison_optimized(1, 1, 0.04, 100).value, 1e-6);
}

TEST(SudakovFernique, Examples) {
  EXPECT_EQ(gmax::sudakov_fernique(0, 10).value, 0.0);
  EXPECT_NEAR(gmax::sudakov_fernique(0.01, 100).value, 0.60697085175405854, 1e-15);
  EXPECT_NEAR(gmax::sudakov_fernique(1, 2).value, 2.3548200450309494, 1e-15);
  EXPECT_EQ(code_of([] { gmax::sudakov_fernique(-0.1, 10); }), Errc::NegativeInput);
  EXPECT_EQ(code_of([] { gmax::sudakov_fernique(0.1, 1); }), Errc::POutOfRange);
}

TEST(KolmogorovShape, Examples) {
  EXPECT_EQ(gmax::kolmogorov_shape(0, 100).value, 0.0);
  EXPECT_NEAR(gmax::kolmogorov_shape(1, std::exp(1.0)).value, 1.0, 1e-15);
  // 0.1 (log 1e5)^{2/3}; the log factor is 5.0987, not 5.115.
  EXPECT_NEAR(gmax::kolmogorov_shape(0.001, 100, 1).value, 0.50986726362592948, 1e-14);
  const auto capped = gmax::kolmogorov_shape(0.1, 100, 1);
  EXPECT_TRUE(capped.capped);
  EXPECT_EQ(capped.value, 1.0);
  EXPECT_GT(capped.raw, 1.0);
  EXPECT_EQ(code_of([] { gmax::kolmogorov_shape(-1, 100); }), Errc::NegativeInput);
}

TEST(KolmogorovExplicit, HandDerivedChain) {
  const auto r = gmax::kolmogorov_explicit(1e-6, 100, 1, 1);
  EXPECT_NEAR(r.constants.at("smoothing_width"), 0.014478134716260554, 1e-16);
  EXPECT_NEAR(r.constants.at("e_beta"), 0.014478134716260554, 1e-16);
  EXPECT_NEAR(r.constants.at("beta"), 318.0775891535236, 1e-10);
  EXPECT_NEAR(r.constants.at("smoothing_cost"), 0.054964431584155503, 1e-15);
  EXPECT_NEAR(r.constants.at("anticonc_cost"), 0.49629357758415246, 1e-14);
  EXPECT_NEAR(r.value, 0.55125800916830796, 1e-14);
  EXPECT_FALSE(r.capped);
}

TEST(KolmogorovExplicit, LimitsAndErrors) {
  double prev = INFINITY;
  for (double d : {1e-2, 1e-4, 1e-6, 1e-9}) {
    const double v = gmax::kolmogorov_explicit(d, 100, 1, 1).raw;
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_EQ(gmax::kolmogorov_explicit(0, 100, 1, 1).value, 0.0);
  const auto big = gmax::kolmogorov_explicit(1.5, 100, 1, 1);
  EXPECT_EQ(big.value, 1.0);
  EXPECT_TRUE(big.capped);
  EXPECT_EQ(code_of([] { gmax::kolmogorov_explicit(0.1, 100, 2, 1); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { gmax::kolmogorov_explicit(0.1, 100, 0, 1); }), Errc::NonPositiveSigma);
  EXPECT_EQ(code_of([] { gmax::kolmogorov_explicit(-0.1, 100, 1, 1); }), Errc::NegativeInput);
}

TEST(AnticoncEqual, Examples) {
  const auto r = gmax::anticonc_equal(0.01, 0, 1);
  EXPECT_NEAR(r.value, 0.04, 1e-16);
  // Exact L for a single standard normal at eps = 0.01.
  const double exact = gmax::normal_cdf(0.01) - gmax::normal_cdf(-0.01);
  EXPECT_NEAR(exact, 0.0079787126292632074, 1e-15);
  EXPECT_LE(exact, r.value);
  EXPECT_DOUBLE_EQ(gmax::anticonc_equal(0.02, 2, 1).value, 2 * gmax::anticonc_equal(0.01, 2, 1).value);
  EXPECT_EQ(gmax::anticonc_equal(1, 10, 1).value, 1.0);
  EXPECT_TRUE(gmax::anticonc_equal(1, 10, 1).capped);
  EXPECT_EQ(code_of([] { gmax::anticonc_equal(0.1, 1, 0); }), Errc::NonPositiveSigma);
  EXPECT_EQ(code_of([] { gmax::anticonc_equal(0, 1, 1); }), Errc::NonPositiveEpsilon);
}

TEST(AnticoncExplicit, Examples) {
  EXPECT_NEAR(gmax::anticonc_explicit(0.01, 3.035, 1, 2).value, 0.43419417035081171, 1e-15);
  const auto eq = gmax::anticonc_explicit(0.05, 2.0, 1.5, 1.5);
  EXPECT_DOUBLE_EQ(eq.constants.at("braces"), 3.0);
  // Boundary eps = sigma_min: log term vanishes.
  const auto edge = gmax::anticonc_explicit(1.0, 1.0, 1.0, 2.0);
  EXPECT_NEAR(edge.raw, 1.0 + 4.0 * (2.0 + 2.0 - 0.5), 1e-14);
  const auto wide = gmax::anticonc_explicit(2.0, 1.0, 1.0, 2.0);
  EXPECT_EQ(wide.value, 1.0);
  EXPECT_NEAR(gmax::anticonc_explicit(0.5, 1.0, 1.0, 1.0).raw, 0.5 + 4 * 0.5 * 2, 1e-15);
}

TEST(AnticoncExplicit, EqualVarianceIdentity) {
  for (double eps : {1e-4, 1e-3, 1e-2, 0.1, 0.5}) {
    for (double ap : {0.0, 1.0, 2.5}) {
      for (double s : {0.7, 1.0, 3.0}) {
        if (eps > s) continue;
        EXPECT_NEAR(gmax::anticonc_explicit(eps, ap, s, s).raw, gmax::anticonc_equal(eps, ap, s).raw + eps / s, 1e-15);
      }
    }
  }
}

TEST(AnticoncSimple, Examples) {
  EXPECT_NEAR(gmax::anticonc_simple(1, std::exp(1.0), 1).value, 1.0, 1e-15);
  EXPECT_NEAR(gmax::anticonc_simple(0.01, 100, 1).value, 0.030348542587702927, 1e-16);
  EXPECT_LE(gmax::anticonc_simple(0.1, 30, 1).value, gmax::anticonc_simple(0.1, 900, 1).value);
  EXPECT_NEAR(gmax::anticonc_simple(0.01, 100, 1, true).value, 0.01 * std::sqrt(std::log(100.0)), 1e-16);
  EXPECT_EQ(code_of([] { gmax::anticonc_simple(-0.1, 10); }), Errc::NegativeInput);
}

TEST(BallBound, Examples) {
  EXPECT_DOUBLE_EQ(gmax::ball_bound(0.5, 1, 1).value, 0.5);
  EXPECT_NEAR(gmax::ball_bound(0.1, 16, 1).value, 0.2, 1e-15);
  // p^{1/4} / sqrt(log(p/eps)) at p = 1e8, eps = 0.01.
  const double ratio = gmax::ball_bound(0.01, 1e8).raw / gmax::anticonc_simple(0.01, 1e8).raw;
  EXPECT_NEAR(ratio, 20.8397, 1e-4);
}

TEST(ApEnvelope, Values) {
  const auto [lo, hi] = gmax::ap_envelope(100);
  EXPECT_NEAR(hi, 3.0348542587702927, 1e-15);
  EXPECT_NEAR(lo, 0.17883050219077894, 1e-15);
  EXPECT_EQ(code_of([] { gmax::ap_envelope(1.5); }), Errc::POutOfRange);
  const auto draws = gmax::draw_iid_maxima(100, 100000, 77);
  EXPECT_GT(draws.mean(), lo);
  EXPECT_LT(draws.mean(), hi);
  EXPECT_NEAR(draws.mean(), 2.5, 0.02);
}

TEST(GaussianTail, ExamplesAndMonteCarlo) {
  EXPECT_NEAR(gmax::gaussian_tail(2.0, 2.0), std::exp(-0.5), 1e-16);
  EXPECT_NEAR(gmax::gaussian_tail(1e-9, 1.0), 1.0, 1e-15);
  EXPECT_EQ(code_of([] { gmax::gaussian_tail(0, 1); }), Errc::NonPositiveInput);
  const auto draws = gmax::draw_iid_maxima(50, 1000000, 78);
  const double mean = draws.mean();
  for (double r : {1.0, 2.0, 3.0}) {
    const double tail = 1.0 - draws.ecdf(mean + r - 1e-15);
    EXPECT_LE(tail, gmax::gaussian_tail(r, 1.0)) << r;
  }
}

TEST(MaximalInequality, Examples) {
  EXPECT_EQ(gmax::maximal_inequality(0, 0, 10).value, 0.0);
  EXPECT_NEAR(gmax::maximal_inequality(49, 1, std::exp(1.0), 2).value, 2 * (7 + 1), 1e-14);
  EXPECT_EQ(code_of([] { gmax::maximal_inequality(-1, 0, 10); }), Errc::NegativeInput);
  EXPECT_EQ(code_of([] { gmax::maximal_inequality(1, 0, 1); }), Errc::POutOfRange);
}

TEST(DeltahatBound, Examples) {
  EXPECT_EQ(gmax::deltahat_bound(0, 0, 100, 10).value, 0.0);
  double prev = INFINITY;
  for (double n : {10., 100., 1000., 1e4}) {
    const double v = gmax::deltahat_bound(1.3, 2.0, n, 50).value;
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_EQ(code_of([] { gmax::deltahat_bound(1, 1, 0, 10); }), Errc::NegativeInput);
}

TEST(Bounds, MonotoneInEpsilonAndDelta) {
  const std::vector<double> grid{1e-5, 1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.3, 0.9};
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double a = grid[i - 1], b = grid[i];
    EXPECT_LE(gmax::anticonc_equal(a, 2, 1).value, gmax::anticonc_equal(b, 2, 1).value);
    EXPECT_LE(gmax::anticonc_explicit(a, 2, 1, 1.7).value, gmax::anticonc_explicit(b, 2, 1, 1.7).value);
    EXPECT_LE(gmax::anticonc_simple(a, 300).value, gmax::anticonc_simple(b, 300).value);
    EXPECT_LE(gmax::ball_bound(a, 300).value, gmax::ball_bound(b, 300).value);
    EXPECT_LE(gmax::comparison_smooth(kG1, kG2, a, 3).value, gmax::comparison_smooth(kG1, kG2, b, 3).value);
    EXPECT_LE(gmax::comparison_max(kG1, kG2, a, 3, 50).value, gmax::comparison_max(kG1, kG2, b, 3, 50).value);
    EXPECT_LE(gmax::comparison_optimized(kG1, kG2, a, 50).value, gmax::comparison_optimized(kG1, kG2, b, 50).value);
    EXPECT_LE(gmax::sudakov_fernique(a, 50).value, gmax::sudakov_fernique(b, 50).value);
    EXPECT_LE(gmax::kolmogorov_shape(a, 50).value, gmax::kolmogorov_shape(b, 50).value);
    EXPECT_LE(gmax::kolmogorov_explicit(a, 50, 1, 1).value, gmax::kolmogorov_explicit(b, 50, 1, 1).value);
  }
}

TEST(EvaluateBound, MatchesDirectCallsBitForBit) {
  const auto direct = gmax::kolmogorov_explicit(1e-4, 200, 1, 1.5);
  const auto viaMap = gmax::evaluate_bound(FormulaId::KolmogorovExplicit,
                                           {{"delta", 1e-4}, {"p", 200}, {"sigma_min", 1}, {"sigma_max", 1.5}});
  EXPECT_EQ(direct.value, viaMap.value);
  EXPECT_EQ(direct.constants, viaMap.constants);
  const auto again = gmax::evaluate_bound(FormulaId::KolmogorovExplicit, viaMap.inputs);
  EXPECT_EQ(again.value, viaMap.value);
  EXPECT_NEAR(gmax::evaluate_bound(FormulaId::ComparisonSmooth, {{"delta", 0.01}, {"beta", 10}}).value,
              0.21636751345948129, 1e-15);
}

TEST(EvaluateBound, EveryFormulaEvaluates) {
  const std::map<std::string, double> all{{"delta", 0.01}, {"beta", 3}, {"p", 50}, {"epsilon", 0.05},
                                          {"a_p", 2}, {"sigma_min", 1}, {"sigma_max", 1.2}, {"r", 1},
                                          {"sigma2", 4}, {"em2", 1}, {"fourth_moment_avg", 1},
                                          {"max_fourth", 1}, {"n", 100}};
  for (FormulaId id : gmax::all_formulas()) {
    const auto name = gmax::formula_name(id);
    ASSERT_EQ(gmax::parse_formula_id(name), id);
    // Feed only the keys the formula accepts: drop unknown ones until it evaluates.
    std::map<std::string, double> inputs = all;
    for (int guard = 0; guard < 20; ++guard) {
      try {
        const auto r = gmax::evaluate_bound(id, inputs);
        EXPECT_GE(r.value, 0.0) << name;
        EXPECT_EQ(gmax::to_json(r)["formula_id"], std::string(name));
        break;
      } catch (const gmax::Error& e) {
        const std::string what = e.what();
        const auto q1 = what.find('\'');
        ASSERT_NE(q1, std::string::npos) << what;
        ASSERT_NE(what.find("unknown input"), std::string::npos) << what;
        inputs.erase(what.substr(q1 + 1, what.find('\'', q1 + 1) - q1 - 1));
      }
    }
  }
  EXPECT_FALSE(gmax::parse_formula_id("no_such_formula").has_value());
}

TEST(EvaluateBound, InputErrors) {
  EXPECT_EQ(code_of([] { gmax::evaluate_bound(FormulaId::SudakovFernique, {{"delta", 0.1}}); }),
            Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { gmax::evaluate_bound(FormulaId::SudakovFernique, {{"delta", 0.1}, {"p", 3}, {"q", 1}}); }),
            Errc::InvalidArgument);
}

TEST(ParseInputs, Forms) {
  const auto m = gmax::parse_inputs("delta=0.01, p=100,beta=1e3");
  EXPECT_EQ(m.at("delta"), 0.01);
  EXPECT_EQ(m.at("p"), 100.0);
  EXPECT_EQ(m.at("beta"), 1000.0);
  EXPECT_TRUE(gmax::parse_inputs("").empty());
  EXPECT_EQ(code_of([] { gmax::parse_inputs("delta"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { gmax::parse_inputs("delta=abc"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { gmax::parse_inputs("=4"); }), Errc::ParseError);
}

TEST(BoundReport, JsonCarriesInfinity) {
  gmax::BoundReport r;
  r.raw = INFINITY;
  r.value = INFINITY;
  const auto j = gmax::to_json(r);
  EXPECT_EQ(j["value"], "inf");
}

}  // namespace
