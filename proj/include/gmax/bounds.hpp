#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gmax {

// Stable identifiers; formula_name() strings are part of the CLI contract.
enum class FormulaId {
  ComparisonSmooth,
  ComparisonMax,
  ComparisonOptimized,
  SudakovFernique,
  KolmogorovShape,
  KolmogorovExplicit,
  AnticoncEqual,
  AnticoncExplicit,
  AnticoncSimple,
  BallBound,
  ApEnvelope,
  GaussianTail,
  MaximalInequality,
  DeltahatBound,
};

std::string_view formula_name(FormulaId id) noexcept;
std::optional<FormulaId> parse_formula_id(std::string_view name) noexcept;
const std::vector<FormulaId>& all_formulas() noexcept;

// One evaluated bound. `raw` is the formula value before any clamp; for
// probability-valued bounds `value = min(raw, 1)` and `capped` records whether
// the clamp was active. Evaluation is a pure function of the inputs.
struct BoundReport {
  FormulaId formula{};
  std::map<std::string, double> inputs;
  std::map<std::string, double> constants;
  double raw = 0.0;
  double value = 0.0;
  bool capped = false;
};

nlohmann::json to_json(const BoundReport& report);

// Comparison for smooth g: (g2/2 + beta g1) Delta.
BoundReport comparison_smooth(double g1, double g2, double delta, double beta);
// Same for g(max): adds 2 g1 log(p) / beta.
BoundReport comparison_max(double g1, double g2, double delta, double beta, double p);
// comparison_max minimized over beta: g2 Delta/2 + 2 g1 sqrt(2 Delta log p).
BoundReport comparison_optimized(double g1, double g2, double delta, double p);
BoundReport sudakov_fernique(double delta, double p);

// min(1, c Delta^{1/3} (1 v log(p/Delta))^{2/3}); 0 at Delta = 0.
BoundReport kolmogorov_shape(double delta, double p, double c = 1.0);

// Kolmogorov bound with every constant explicit: smoothing cost of the
// g0-based indicator sandwich at beta = log(p)/delta, delta = Delta^{1/3}(2 log p)^{1/6},
// plus the explicit anti-concentration cost at eps = e_beta + delta. a_p
// defaults to its envelope sqrt(2 log p). Delta > 1 reports the trivial value 1.
BoundReport kolmogorov_explicit(double delta, double p, double sigma_min, double sigma_max,
                                std::optional<double> a_p = std::nullopt);

// min(1, 4 eps (a_p + 1) / sigma).
BoundReport anticonc_equal(double epsilon, double a_p, double sigma);
// Tail plus non-tail terms for unequal variances; reduces to
// anticonc_equal + eps/sigma when sigma_min == sigma_max.
BoundReport anticonc_explicit(double epsilon, double a_p, double sigma_min, double sigma_max);
// min(1, c eps sqrt(1 v log(p/eps))); log p instead when equal_variance.
BoundReport anticonc_simple(double epsilon, double p, double c = 1.0, bool equal_variance = false);
// min(1, c eps p^{1/4}).
BoundReport ball_bound(double epsilon, double p, double c = 1.0);

// (sqrt(log p)/12, sqrt(2 log p)) bracketing E[max] for i.i.d. standard coordinates.
std::pair<double, double> ap_envelope(double p);

// exp(-r^2 / (2 sigma^2)).
double gaussian_tail(double r, double sigma);

// c (sqrt(sigma2 log p) + sqrt(em2) log p).
BoundReport maximal_inequality(double sigma2, double em2, double p, double c = 1.0);
// c (fourth_moment_avg sqrt(log p / n) + max_fourth log(p) / n).
BoundReport deltahat_bound(double fourth_moment_avg, double max_fourth, double n, double p,
                           double c = 1.0);

// Evaluates any formula from named inputs (the CLI surface). Optional inputs
// take their documented defaults (c = 1, g1/g2 = g0 norms, a_p = envelope).
// Throws InvalidArgument on a missing or unknown input name.
BoundReport evaluate_bound(FormulaId id, const std::map<std::string, double>& inputs);

// Parses "k=v,k=v" into a map. Throws ParseError.
std::map<std::string, double> parse_inputs(std::string_view text);

}  // namespace gmax
