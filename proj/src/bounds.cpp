#include "gmax/bounds.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <set>
#include <string>

#include "gmax/error.hpp"
#include "gmax/smoothmax.hpp"

namespace gmax {

namespace {

struct NamedFormula {
  FormulaId id;
  std::string_view name;
};

constexpr std::array<NamedFormula, 14> kFormulas{{
    {FormulaId::ComparisonSmooth, "comparison_smooth"},
    {FormulaId::ComparisonMax, "comparison_max"},
    {FormulaId::ComparisonOptimized, "comparison_optimized"},
    {FormulaId::SudakovFernique, "sudakov_fernique"},
    {FormulaId::KolmogorovShape, "kolmogorov_shape"},
    {FormulaId::KolmogorovExplicit, "kolmogorov_explicit"},
    {FormulaId::AnticoncEqual, "anticonc_equal"},
    {FormulaId::AnticoncExplicit, "anticonc_explicit"},
    {FormulaId::AnticoncSimple, "anticonc_simple"},
    {FormulaId::BallBound, "ball_bound"},
    {FormulaId::ApEnvelope, "ap_envelope"},
    {FormulaId::GaussianTail, "gaussian_tail"},
    {FormulaId::MaximalInequality, "maximal_inequality"},
    {FormulaId::DeltahatBound, "deltahat_bound"},
}};

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0)) throw Error(Errc::NegativeInput, std::string(name) + " must be >= 0");
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw Error(Errc::NegativeInput, std::string(name) + " must be > 0");
}

void require_p(double p, double min_p) {
  if (!(p >= min_p) || !std::isfinite(p)) {
    throw Error(Errc::POutOfRange, "p must be >= " + std::to_string(min_p));
  }
}

void require_sigma(double s, const char* name) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(Errc::NonPositiveSigma, std::string(name) + " must be positive");
  }
}

void require_epsilon(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(Errc::NonPositiveEpsilon, "epsilon must be positive");
  }
}

BoundReport make(FormulaId id, std::map<std::string, double> inputs, double raw,
                 bool probability) {
  BoundReport r;
  r.formula = id;
  r.inputs = std::move(inputs);
  r.raw = raw;
  if (probability && raw > 1.0) {
    r.value = 1.0;
    r.capped = true;
  } else {
    r.value = raw;
  }
  return r;
}

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

}  // namespace

std::string_view formula_name(FormulaId id) noexcept {
  for (const auto& f : kFormulas) {
    if (f.id == id) return f.name;
  }
  return "unknown";
}

std::optional<FormulaId> parse_formula_id(std::string_view name) noexcept {
  for (const auto& f : kFormulas) {
    if (f.name == name) return f.id;
  }
  return std::nullopt;
}

const std::vector<FormulaId>& all_formulas() noexcept {
  static const std::vector<FormulaId> ids = [] {
    std::vector<FormulaId> v;
    for (const auto& f : kFormulas) v.push_back(f.id);
    return v;
  }();
  return ids;
}

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json j;
  j["formula_id"] = formula_name(report.formula);
  j["inputs"] = nlohmann::json::object();
  for (const auto& [k, v] : report.inputs) j["inputs"][k] = number(v);
  j["constants"] = nlohmann::json::object();
  for (const auto& [k, v] : report.constants) j["constants"][k] = number(v);
  j["raw"] = number(report.raw);
  j["value"] = number(report.value);
  j["capped"] = report.capped;
  return j;
}

BoundReport comparison_smooth(double g1, double g2, double delta, double beta) {
  require_nonnegative(g1, "g1");
  require_nonnegative(g2, "g2");
  require_nonnegative(delta, "delta");
  require_positive(beta, "beta");
  return make(FormulaId::ComparisonSmooth, {{"g1", g1}, {"g2", g2}, {"delta", delta}, {"beta", beta}},
              (g2 / 2.0 + beta * g1) * delta, false);
}

BoundReport comparison_max(double g1, double g2, double delta, double beta, double p) {
  require_p(p, 1.0);
  BoundReport smooth = comparison_smooth(g1, g2, delta, beta);
  const double slack_term = 2.0 * g1 * std::log(p) / beta;
  BoundReport r = make(FormulaId::ComparisonMax,
                       {{"g1", g1}, {"g2", g2}, {"delta", delta}, {"beta", beta}, {"p", p}},
                       smooth.raw + slack_term, false);
  r.constants = {{"smooth_term", smooth.raw}, {"slack_term", slack_term}};
  return r;
}

BoundReport comparison_optimized(double g1, double g2, double delta, double p) {
  require_nonnegative(g1, "g1");
  require_nonnegative(g2, "g2");
  require_nonnegative(delta, "delta");
  require_p(p, 1.0);
  const double log_p = std::log(p);
  const double raw = g2 * delta / 2.0 + 2.0 * g1 * std::sqrt(2.0 * delta * log_p);
  BoundReport r = make(FormulaId::ComparisonOptimized,
                       {{"g1", g1}, {"g2", g2}, {"delta", delta}, {"p", p}}, raw, false);
  if (delta > 0.0 && log_p > 0.0) {
    r.constants["beta_opt"] = std::sqrt(2.0 * log_p / delta);
  }
  return r;
}

BoundReport sudakov_fernique(double delta, double p) {
  require_nonnegative(delta, "delta");
  require_p(p, 2.0);
  return make(FormulaId::SudakovFernique, {{"delta", delta}, {"p", p}},
              2.0 * std::sqrt(2.0 * delta * std::log(p)), false);
}

BoundReport kolmogorov_shape(double delta, double p, double c) {
  require_nonnegative(delta, "delta");
  require_p(p, 2.0);
  require_positive(c, "c");
  std::map<std::string, double> in{{"delta", delta}, {"p", p}, {"c", c}};
  if (delta == 0.0) return make(FormulaId::KolmogorovShape, std::move(in), 0.0, true);
  const double log_term = std::max(1.0, std::log(p / delta));
  BoundReport r = make(FormulaId::KolmogorovShape, std::move(in),
                       c * std::cbrt(delta) * std::pow(log_term, 2.0 / 3.0), true);
  r.constants["log_term"] = log_term;
  return r;
}

BoundReport anticonc_equal(double epsilon, double a_p, double sigma) {
  require_epsilon(epsilon);
  require_nonnegative(a_p, "a_p");
  require_sigma(sigma, "sigma");
  return make(FormulaId::AnticoncEqual, {{"epsilon", epsilon}, {"a_p", a_p}, {"sigma", sigma}},
              4.0 * epsilon * (a_p + 1.0) / sigma, true);
}

BoundReport anticonc_explicit(double epsilon, double a_p, double sigma_min, double sigma_max) {
  require_epsilon(epsilon);
  require_nonnegative(a_p, "a_p");
  require_sigma(sigma_min, "sigma_min");
  require_sigma(sigma_max, "sigma_max");
  if (sigma_min > sigma_max) throw Error(Errc::InvalidArgument, "sigma_min exceeds sigma_max");
  std::map<std::string, double> in{
      {"epsilon", epsilon}, {"a_p", a_p}, {"sigma_min", sigma_min}, {"sigma_max", sigma_max}};

  const double tail = epsilon / sigma_min;
  if (epsilon > sigma_min) {
    BoundReport r = make(FormulaId::AnticoncExplicit, std::move(in), tail, true);
    r.constants = {{"tail_term", tail}, {"non_tail_term", 0.0}};
    return r;
  }
  const double ratio = sigma_max / sigma_min;
  const double log_term = std::sqrt(2.0 * std::log(sigma_min / epsilon));
  const double braces = ratio * a_p + (ratio - 1.0) * log_term + 2.0 - 1.0 / ratio;
  const double non_tail = 4.0 * epsilon * braces / sigma_min;
  BoundReport r = make(FormulaId::AnticoncExplicit, std::move(in), tail + non_tail, true);
  r.constants = {{"tail_term", tail},
                 {"non_tail_term", non_tail},
                 {"braces", braces},
                 {"sigma_ratio", ratio},
                 {"sqrt_2log_sigma_over_eps", log_term}};
  return r;
}

BoundReport kolmogorov_explicit(double delta, double p, double sigma_min, double sigma_max,
                                std::optional<double> a_p) {
  require_nonnegative(delta, "delta");
  require_p(p, 2.0);
  require_sigma(sigma_min, "sigma_min");
  require_sigma(sigma_max, "sigma_max");
  if (sigma_min > sigma_max) throw Error(Errc::InvalidArgument, "sigma_min exceeds sigma_max");
  const double ap = a_p.value_or(std::sqrt(2.0 * std::log(p)));
  require_nonnegative(ap, "a_p");
  std::map<std::string, double> in{{"delta", delta},
                                   {"p", p},
                                   {"sigma_min", sigma_min},
                                   {"sigma_max", sigma_max},
                                   {"a_p", ap}};
  if (delta == 0.0) return make(FormulaId::KolmogorovExplicit, std::move(in), 0.0, true);
  if (delta > 1.0) {
    BoundReport r = make(FormulaId::KolmogorovExplicit, std::move(in), 1.0, true);
    r.capped = true;
    r.constants["delta_out_of_range"] = 1.0;
    return r;
  }

  const double log_p = std::log(p);
  const G0Norms norms = g0_norms();
  const double smoothing_width = std::cbrt(delta) * std::pow(2.0 * log_p, 1.0 / 6.0);
  const double beta = log_p / smoothing_width;
  const double e_beta = log_p / beta;
  // Comparison bound applied to g_{x,beta,delta}: norms scale as delta^-1, delta^-2.
  const double smoothing_cost =
      (norms.second / (2.0 * smoothing_width * smoothing_width) +
       norms.first * beta / smoothing_width) *
      delta;
  const double epsilon = e_beta + smoothing_width;
  const BoundReport anti = anticonc_explicit(epsilon, ap, sigma_min, sigma_max);

  // P(max X <= x) - P(max Y <= x) and its reverse go through the same two
  // costs (the reverse shifts the smoother by -(e_beta + delta)).
  const double upper = smoothing_cost + anti.raw;
  const double lower = smoothing_cost + anti.raw;

  BoundReport r = make(FormulaId::KolmogorovExplicit, std::move(in), std::max(upper, lower), true);
  r.constants = {{"smoothing_width", smoothing_width},
                 {"beta", beta},
                 {"e_beta", e_beta},
                 {"epsilon", epsilon},
                 {"g0_first_norm", norms.first},
                 {"g0_second_norm", norms.second},
                 {"smoothing_cost", smoothing_cost},
                 {"anticonc_cost", anti.raw},
                 {"upper_assembly", upper},
                 {"lower_assembly", lower}};
  return r;
}

BoundReport anticonc_simple(double epsilon, double p, double c, bool equal_variance) {
  require_positive(epsilon, "epsilon");
  require_p(p, 1.0);
  require_positive(c, "c");
  const double arg = equal_variance ? std::log(p) : std::log(p / epsilon);
  const double log_term = std::max(1.0, arg);
  BoundReport r = make(FormulaId::AnticoncSimple,
                       {{"epsilon", epsilon},
                        {"p", p},
                        {"c", c},
                        {"equal_variance", equal_variance ? 1.0 : 0.0}},
                       c * epsilon * std::sqrt(log_term), true);
  r.constants["log_term"] = log_term;
  return r;
}

BoundReport ball_bound(double epsilon, double p, double c) {
  require_positive(epsilon, "epsilon");
  require_p(p, 1.0);
  require_positive(c, "c");
  return make(FormulaId::BallBound, {{"epsilon", epsilon}, {"p", p}, {"c", c}},
              c * epsilon * std::pow(p, 0.25), true);
}

std::pair<double, double> ap_envelope(double p) {
  require_p(p, 2.0);
  const double log_p = std::log(p);
  return {std::sqrt(log_p) / 12.0, std::sqrt(2.0 * log_p)};
}

double gaussian_tail(double r, double sigma) {
  if (!(r > 0.0) || !(sigma > 0.0)) {
    throw Error(Errc::NonPositiveInput, "r and sigma must be positive");
  }
  return std::exp(-r * r / (2.0 * sigma * sigma));
}

BoundReport maximal_inequality(double sigma2, double em2, double p, double c) {
  require_nonnegative(sigma2, "sigma2");
  require_nonnegative(em2, "em2");
  require_p(p, 2.0);
  require_positive(c, "c");
  const double log_p = std::log(p);
  const double variance_term = std::sqrt(sigma2) * std::sqrt(log_p);
  const double envelope_term = std::sqrt(em2) * log_p;
  BoundReport r = make(FormulaId::MaximalInequality,
                       {{"sigma2", sigma2}, {"em2", em2}, {"p", p}, {"c", c}},
                       c * (variance_term + envelope_term), false);
  r.constants = {{"variance_term", variance_term}, {"envelope_term", envelope_term}};
  return r;
}

BoundReport deltahat_bound(double fourth_moment_avg, double max_fourth, double n, double p,
                           double c) {
  require_nonnegative(fourth_moment_avg, "fourth_moment_avg");
  require_nonnegative(max_fourth, "max_fourth");
  if (!(n >= 1.0)) throw Error(Errc::NegativeInput, "n must be >= 1");
  require_p(p, 2.0);
  require_positive(c, "c");
  const double log_p = std::log(p);
  const double variance_term = fourth_moment_avg * std::sqrt(log_p / n);
  const double envelope_term = max_fourth * log_p / n;
  BoundReport r = make(FormulaId::DeltahatBound,
                       {{"fourth_moment_avg", fourth_moment_avg},
                        {"max_fourth", max_fourth},
                        {"n", n},
                        {"p", p},
                        {"c", c}},
                       c * (variance_term + envelope_term), false);
  r.constants = {{"variance_term", variance_term}, {"envelope_term", envelope_term}};
  return r;
}

namespace {

class InputReader {
 public:
  explicit InputReader(const std::map<std::string, double>& inputs) : inputs_(inputs) {}

  double required(const std::string& key) {
    used_.insert(key);
    const auto it = inputs_.find(key);
    if (it == inputs_.end()) throw Error(Errc::InvalidArgument, "missing input '" + key + "'");
    return it->second;
  }

  double optional(const std::string& key, double fallback) {
    used_.insert(key);
    const auto it = inputs_.find(key);
    return it == inputs_.end() ? fallback : it->second;
  }

  std::optional<double> maybe(const std::string& key) {
    used_.insert(key);
    const auto it = inputs_.find(key);
    if (it == inputs_.end()) return std::nullopt;
    return it->second;
  }

  void finish() const {
    for (const auto& [k, v] : inputs_) {
      if (!used_.count(k)) throw Error(Errc::InvalidArgument, "unknown input '" + k + "'");
    }
  }

 private:
  const std::map<std::string, double>& inputs_;
  std::set<std::string> used_;
};

}  // namespace

BoundReport evaluate_bound(FormulaId id, const std::map<std::string, double>& inputs) {
  InputReader in(inputs);
  const G0Norms norms = g0_norms();
  BoundReport r;
  switch (id) {
    case FormulaId::ComparisonSmooth: {
      const double g1 = in.optional("g1", norms.first);
      const double g2 = in.optional("g2", norms.second);
      r = comparison_smooth(g1, g2, in.required("delta"), in.required("beta"));
      break;
    }
    case FormulaId::ComparisonMax: {
      const double g1 = in.optional("g1", norms.first);
      const double g2 = in.optional("g2", norms.second);
      const double delta = in.required("delta");
      const double beta = in.required("beta");
      r = comparison_max(g1, g2, delta, beta, in.required("p"));
      break;
    }
    case FormulaId::ComparisonOptimized: {
      const double g1 = in.optional("g1", norms.first);
      const double g2 = in.optional("g2", norms.second);
      const double delta = in.required("delta");
      r = comparison_optimized(g1, g2, delta, in.required("p"));
      break;
    }
    case FormulaId::SudakovFernique: {
      const double delta = in.required("delta");
      r = sudakov_fernique(delta, in.required("p"));
      break;
    }
    case FormulaId::KolmogorovShape: {
      const double delta = in.required("delta");
      const double p = in.required("p");
      r = kolmogorov_shape(delta, p, in.optional("c", 1.0));
      break;
    }
    case FormulaId::KolmogorovExplicit: {
      const double delta = in.required("delta");
      const double p = in.required("p");
      const double smin = in.optional("sigma_min", 1.0);
      const double smax = in.optional("sigma_max", smin);
      r = kolmogorov_explicit(delta, p, smin, smax, in.maybe("a_p"));
      break;
    }
    case FormulaId::AnticoncEqual: {
      const double eps = in.required("epsilon");
      const double ap = in.required("a_p");
      r = anticonc_equal(eps, ap, in.optional("sigma", 1.0));
      break;
    }
    case FormulaId::AnticoncExplicit: {
      const double eps = in.required("epsilon");
      const double ap = in.required("a_p");
      const double smin = in.required("sigma_min");
      r = anticonc_explicit(eps, ap, smin, in.required("sigma_max"));
      break;
    }
    case FormulaId::AnticoncSimple: {
      const double eps = in.required("epsilon");
      const double p = in.required("p");
      const double c = in.optional("c", 1.0);
      r = anticonc_simple(eps, p, c, in.optional("equal_variance", 0.0) != 0.0);
      break;
    }
    case FormulaId::BallBound: {
      const double eps = in.required("epsilon");
      const double p = in.required("p");
      r = ball_bound(eps, p, in.optional("c", 1.0));
      break;
    }
    case FormulaId::ApEnvelope: {
      const double p = in.required("p");
      const auto [lower, upper] = ap_envelope(p);
      r = make(FormulaId::ApEnvelope, {{"p", p}}, upper, false);
      r.constants = {{"lower", lower}, {"upper", upper}};
      break;
    }
    case FormulaId::GaussianTail: {
      const double radius = in.required("r");
      const double sigma = in.optional("sigma", 1.0);
      r = make(FormulaId::GaussianTail, {{"r", radius}, {"sigma", sigma}},
               gaussian_tail(radius, sigma), true);
      break;
    }
    case FormulaId::MaximalInequality: {
      const double s2 = in.required("sigma2");
      const double em2 = in.required("em2");
      const double p = in.required("p");
      r = maximal_inequality(s2, em2, p, in.optional("c", 1.0));
      break;
    }
    case FormulaId::DeltahatBound: {
      const double m4 = in.required("fourth_moment_avg");
      const double mx = in.required("max_fourth");
      const double n = in.required("n");
      const double p = in.required("p");
      r = deltahat_bound(m4, mx, n, p, in.optional("c", 1.0));
      break;
    }
  }
  in.finish();
  return r;
}

std::map<std::string, double> parse_inputs(std::string_view text) {
  std::map<std::string, double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string item(text.substr(pos, comma - pos));
    item.erase(std::remove_if(item.begin(), item.end(), [](char c) { return c == ' '; }),
               item.end());
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw Error(Errc::ParseError, "expected key=value, got '" + item + "'");
      }
      const std::string key = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(value.c_str(), &end);
      if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE) {
        throw Error(Errc::ParseError, "bad number for '" + key + "': '" + value + "'");
      }
      out[key] = v;
    }
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace gmax
