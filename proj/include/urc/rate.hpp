#pragma once

#include <cmath>

#include "urc/coverage.hpp"
#include "urc/model.hpp"
#include "urc/optimize.hpp"
#include "urc/quadrature.hpp"

namespace urc {

/// Solution of the reliability-constrained average-rate problem
/// maximize eta * ln(1 + t) subject to p_n(t) >= eta.
struct RateSolution {
  double eta;
  double t_hat;      // operating threshold
  double rate_nats;  // eta * ln(1 + t_hat)
  BoundKind kind;    // curve used for the coverage constraint
  bool binding;      // true if the constraint determined t_hat
};

/// Peak of the unconstrained objective p_n(t) * ln(1 + t).
struct UnconstrainedOptimum {
  double t;
  double rate_nats;
};

/// Average rate of the threshold-free (full instantaneous CSI) baseline,
/// with its closed-form companions.
struct FullCsiRate {
  double exact;   // integral of p_1 over the rate axis
  double lower;   // (alpha - 2) / 2
  double upper;   // alpha / 2
  double approx;  // (alpha - 1) / 2
};

/// Maximizer of p_n(t) * ln(1+t). The objective is unimodal in ln t; golden
/// section over ln t in [ln 1e-6, ln 1e4] to |delta ln t| <= 1e-8. Plateau
/// ties resolve toward smaller t.
inline UnconstrainedOptimum unconstrained_optimum(const ModelParams& params,
                                                  const EvalConfig& config = EvalConfig()) {
  auto objective = [&](double log_t) {
    const double t = std::exp(log_t);
    return coverage_exact(params, t, config) * std::log1p(t);
  };
  const double log_t = golden_section_max(objective, std::log(1e-6), std::log(1e4), 1e-8);
  const double t = std::exp(log_t);
  return {t, coverage_exact(params, t, config) * std::log1p(t)};
}

/// Whether the reliability constraint p_n(t) >= eta binds at the optimum.
/// Equivalent to coverage_inverse(eta, kExact) <= t_tilde, but evaluated as
/// p_n(t_tilde) <= eta so that tiny eta needs no inversion (whose bracket
/// would outrun the series budget).
inline bool check_binding(const ModelParams& params, double eta,
                          const EvalConfig& config = EvalConfig()) {
  if (!std::isfinite(eta) || !(eta > 0.0) || !(eta < 1.0))
    throw std::domain_error("check_binding: requires eta in (0, 1)");
  const UnconstrainedOptimum opt = unconstrained_optimum(params, config);
  return coverage_exact(params, opt.t, config) <= eta;
}

/// Exact solution of the constrained problem. If the constraint binds, the
/// threshold is the exact inverse at eta; otherwise the unconstrained peak
/// is feasible and is returned with binding = false (its rate is
/// p_n(t_tilde) ln(1+t_tilde), attained with reliability above eta).
inline RateSolution rate_max_exact(const ModelParams& params, double eta,
                                   const EvalConfig& config = EvalConfig()) {
  if (!std::isfinite(eta) || !(eta > 0.0) || !(eta < 1.0))
    throw std::domain_error("rate_max_exact: requires eta in (0, 1)");
  const UnconstrainedOptimum opt = unconstrained_optimum(params, config);
  if (coverage_exact(params, opt.t, config) <= eta) {
    const double t_hat = coverage_inverse(params, eta, BoundKind::kExact, config);
    return {eta, t_hat, eta * std::log1p(t_hat), BoundKind::kExact, true};
  }
  return {eta, opt.t, opt.rate_nats, BoundKind::kExact, false};
}

/// Closed-form rate expressions for the binding regime, one per supported
/// coverage bound: each is eta * ln(1 + inverse(eta)) for its curve, so
/// LbC, LbX and LbPlus sit below the exact binding rate and UbC above it.
/// LbB is the eta -> 1 asymptote (alpha-2)(1-eta)/(2n); it tracks the exact
/// rate from slightly above and is an approximation, not a bound.
inline double rate_bound(const ModelParams& params, double eta, BoundKind kind) {
  if (!std::isfinite(eta) || !(eta > 0.0) || !(eta < 1.0))
    throw std::domain_error("rate_bound: requires eta in (0, 1)");
  const double alpha = params.alpha;
  const double n = params.n;
  switch (kind) {
    case BoundKind::kLbB:
      return (alpha - 2.0) * (1.0 - eta) / (2.0 * n);
    case BoundKind::kLbC:
      return eta * std::log1p((std::pow(eta, -(alpha - 2.0) / 2.0) - 1.0) / n);
    case BoundKind::kUbC:
      return eta * std::log1p((1.0 - 2.0 / alpha) * (std::pow(eta, -alpha / 2.0) - 1.0) / n);
    case BoundKind::kLbX:
      return eta * (alpha - 2.0) / (2.0 * n) * (-std::log(eta));
    case BoundKind::kLbPlus:
      return eta * std::log1p(std::pow(coverage_constant(params), -alpha / 2.0) *
                              (std::pow(eta, -alpha / 2.0) - 1.0));
    default:
      throw std::invalid_argument("rate_bound: no closed form for this kind");
  }
}

/// Average rate when the transmitter adapts to the instantaneous SIR
/// instead of a fixed threshold: integral over x >= 0 of p_1(e^x - 1).
/// The integrand needs p_1 far beyond the default series budget (the
/// 1e-12 truncation point sits near t ~ 1e24), so it runs with a loose
/// tolerance and a large term budget; the polynomial term decay keeps the
/// cost bounded for alpha <= 6.
inline FullCsiRate fullcsi_average_rate(double alpha) {
  if (!std::isfinite(alpha) || !(alpha > 2.0))
    throw std::domain_error("fullcsi_average_rate: requires finite alpha > 2");
  const ModelParams params(alpha, 1);
  const EvalConfig wide(1e-8, 1000000);
  auto integrand = [&](double x) { return coverage_exact(params, std::expm1(x), wide); };
  double x_max = 8.0;
  while (integrand(x_max) >= 1e-12) x_max += 4.0;  // integrand ~ c e^{-2x/alpha}
  const double exact = integrate_adaptive(integrand, 0.0, x_max, 1e-6);
  return {exact, (alpha - 2.0) / 2.0, alpha / 2.0, (alpha - 1.0) / 2.0};
}

}  // namespace urc
