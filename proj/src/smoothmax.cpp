#include "gmax/smoothmax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gmax/error.hpp"

namespace gmax {

namespace {

void validate(std::span<const double> z, double beta) {
  if (z.empty()) throw Error(Errc::EmptyVector, "smooth max of an empty vector");
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(Errc::NonPositiveBeta, "beta must be positive and finite");
  }
  for (double v : z) {
    if (!std::isfinite(v)) throw Error(Errc::NonFinite, "smooth max input is not finite");
  }
}

struct Shifted {
  double max;
  double sum;  // sum_j exp(beta (z_j - max)), always >= 1
};

Shifted shifted_sum(std::span<const double> z, double beta, std::vector<double>* terms) {
  const double m = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  if (terms) terms->resize(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double e = std::exp(beta * (z[j] - m));
    if (terms) (*terms)[j] = e;
    sum += e;
  }
  return {m, sum};
}

// m + log(sum)/beta, nudged by at most a few ulps so that the rounded value
// satisfies 0 <= value - m <= slack.
double sandwiched_value(double m, double sum, double beta, double slack) {
  const double gap = std::min(std::log(sum) / beta, slack);
  double v = m + std::max(gap, 0.0);
  while (v - m > slack) v = std::nextafter(v, -std::numeric_limits<double>::infinity());
  return v;
}

}  // namespace

double SmoothMaxEval::hessian_entry(std::size_t j, std::size_t k) const {
  const double cross = weights[j] * weights[k];
  return j == k ? weights[j] - cross : -cross;
}

std::vector<double> SmoothMaxEval::apply_hessian_scale(std::span<const double> v) const {
  if (v.size() != weights.size()) {
    throw Error(Errc::DimensionMismatch, "vector length does not match dimension");
  }
  double dot = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) dot += weights[j] * v[j];
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = weights[j] * (v[j] - dot);
  return out;
}

SmoothMaxEval smooth_max(std::span<const double> z, double beta) {
  validate(z, beta);
  SmoothMaxEval eval;
  eval.beta = beta;
  eval.slack = std::log(static_cast<double>(z.size())) / beta;
  const Shifted s = shifted_sum(z, beta, &eval.weights);
  eval.value = sandwiched_value(s.max, s.sum, beta, eval.slack);
  for (double& w : eval.weights) w /= s.sum;

  const std::size_t p = z.size();
  if (p <= kDenseHessianLimit) {
    const auto n = static_cast<Eigen::Index>(p);
    const Eigen::Map<const Vector> pi(eval.weights.data(), n);
    Matrix w = -pi * pi.transpose();
    w.diagonal() += pi;
    eval.hessian_scale = std::move(w);
  }
  return eval;
}

double smooth_max_value(std::span<const double> z, double beta) {
  validate(z, beta);
  const double slack = std::log(static_cast<double>(z.size())) / beta;
  const Shifted s = shifted_sum(z, beta, nullptr);
  return sandwiched_value(s.max, s.sum, beta, slack);
}

double smoother_g0(double t) noexcept {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

double smoother_g0_derivative(double t) noexcept {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double u = t * (1.0 - t);
  return -30.0 * u * u;
}

double smoother_g0_second_derivative(double t) noexcept {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return -60.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
}

G0Norms g0_norms() noexcept { return {30.0 / 16.0, 10.0 / std::sqrt(3.0)}; }

SmootherParams::SmootherParams(double x, double beta, double delta)
    : x_(x), beta_(beta), delta_(delta) {
  if (!std::isfinite(x)) throw Error(Errc::NonFinite, "smoother location is not finite");
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(Errc::NonPositiveBeta, "smoother beta must be positive");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(Errc::NonPositiveInput, "smoother delta must be positive");
  }
}

double smoother_gxbd(double t, const SmootherParams& params, std::size_t p) {
  if (p == 0) throw Error(Errc::POutOfRange, "p must be at least 1");
  const double e_beta = std::log(static_cast<double>(p)) / params.beta();
  const double lower = params.x() + e_beta;
  // Threshold comparisons first, so the indicator sandwich holds exactly.
  if (t <= lower) return 1.0;
  if (t >= lower + params.delta()) return 0.0;
  return smoother_g0((t - lower) / params.delta());
}

Matrix composite_hessian(const SmoothMaxEval& eval, double g_first, double g_second) {
  const auto n = static_cast<Eigen::Index>(eval.dim());
  const Eigen::Map<const Vector> pi(eval.weights.data(), n);
  Matrix h = (g_second - eval.beta * g_first) * (pi * pi.transpose());
  h.diagonal() += eval.beta * g_first * pi;
  return h;
}

}  // namespace gmax
