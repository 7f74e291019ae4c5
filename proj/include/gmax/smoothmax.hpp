#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gmax/gaussian_core.hpp"

namespace gmax {

// Dense Hessian weights are materialized only up to this dimension.
inline constexpr std::size_t kDenseHessianLimit = 512;

// Evaluation of F_beta(z) = beta^-1 log sum_j exp(beta z_j) together with its
// gradient pi(z) (softmax weights) and Hessian weights w_jk = 1(j=k) pi_j - pi_j pi_k,
// so that d^2 F / dz_j dz_k = beta w_jk.
struct SmoothMaxEval {
  double beta = 0.0;
  double value = 0.0;
  std::vector<double> weights;
  // Present when p <= kDenseHessianLimit.
  std::optional<Matrix> hessian_scale;
  // e_beta = log(p) / beta; value - max z lies in [0, slack].
  double slack = 0.0;

  std::size_t dim() const noexcept { return weights.size(); }
  double hessian_entry(std::size_t j, std::size_t k) const;
  // w v = pi .* v - pi (pi . v), available at any p.
  std::vector<double> apply_hessian_scale(std::span<const double> v) const;
};

// Max-shift stabilized; finite for any finite input and any beta > 0.
// Throws EmptyVector, NonPositiveBeta, NonFinite.
SmoothMaxEval smooth_max(std::span<const double> z, double beta);

// Value only, same rounding as smooth_max().value.
double smooth_max_value(std::span<const double> z, double beta);

// C^2 step: 1 on t <= 0, 0 on t >= 1, 1 - 10t^3 + 15t^4 - 6t^5 in between
// (the closed form of 30 * integral_t^1 s^2 (1-s)^2 ds).
double smoother_g0(double t) noexcept;
double smoother_g0_derivative(double t) noexcept;
double smoother_g0_second_derivative(double t) noexcept;

struct G0Norms {
  double first;   // sup |g0'|  = 30/16, attained at t = 1/2
  double second;  // sup |g0''| = 10/sqrt(3), attained at t = 1/2 -+ 1/(2 sqrt 3)
};
G0Norms g0_norms() noexcept;

class SmootherParams {
 public:
  // Throws NonPositiveBeta or NonPositiveInput.
  SmootherParams(double x, double beta, double delta);

  double x() const noexcept { return x_; }
  double beta() const noexcept { return beta_; }
  double delta() const noexcept { return delta_; }

 private:
  double x_;
  double beta_;
  double delta_;
};

// g_{x,beta,delta}(t) = g0((t - x - e_beta) / delta) with e_beta = log(p) / beta.
double smoother_gxbd(double t, const SmootherParams& params, std::size_t p);

// Hessian of g o F_beta at the evaluated point, given g'(F) and g''(F):
// g''(F) pi_j pi_k + beta g'(F) w_jk.
Matrix composite_hessian(const SmoothMaxEval& eval, double g_first, double g_second);

}  // namespace gmax
