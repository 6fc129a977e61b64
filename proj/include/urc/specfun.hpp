#pragma once

#include <algorithm>
#include <cmath>

#include "urc/model.hpp"

namespace urc {

/// log Gamma(x) for x > 0. Lanczos approximation (g = 7, 9 coefficients)
/// with the reflection formula below x = 0.5; absolute error stays near
/// 1e-15, so the relative error is well under 1e-13 wherever |lgamma| is
/// not vanishingly small.
inline double ln_gamma(double x) {
  if (!std::isfinite(x) || !(x > 0.0)) throw std::domain_error("ln_gamma: requires finite x > 0");
  constexpr double kPi = 3.14159265358979323846;
  constexpr double kHalfLog2Pi = 0.91893853320467274178;
  constexpr double kCoef[9] = {0.99999999999980993,    676.5203681218851,
                               -1259.1392167224028,    771.32342877765313,
                               -176.61502916214059,    12.507343278686905,
                               -0.13857109526572012,   9.9843695780195716e-6,
                               1.5056327351493116e-7};
  if (x < 0.5) return std::log(kPi / std::sin(kPi * x)) - ln_gamma(1.0 - x);
  double acc = kCoef[0];
  for (int i = 1; i < 9; ++i) acc += kCoef[i] / (x - 1.0 + i);
  const double base = x + 6.5;  // x + g - 0.5
  return kHalfLog2Pi + (x - 0.5) * std::log(base) - base + std::log(acc);
}

/// The constant c_n = Gamma(1 - 2/alpha) Gamma(n + 2/alpha) / Gamma(n).
/// Always >= 1; grows with n, falls toward 1 as alpha -> infinity. It is
/// both the t -> infinity limit of the transformed series factor and the
/// constant in the asymptotic coverage tail.
inline double coverage_constant(const ModelParams& params) {
  const double b = 2.0 / params.alpha;  // in (0, 1)
  return std::exp(ln_gamma(1.0 - b) + ln_gamma(params.n + b) -
                  ln_gamma(static_cast<double>(params.n)));
}

/// Series factor G(t) = 2F1(1 - n - 2/alpha, -2/alpha; 1 - 2/alpha; t/(1+t)).
///
/// This is the Pfaff transform of the coverage denominator; unlike the
/// untransformed series it converges for every t >= 0 and its terms are
/// single-signed once k > n, so no cancellation occurs. G increases from 1
/// at t = 0 to coverage_constant(params) as t -> infinity.
///
/// Terms decay like k^{-s} z^k with z = t/(1+t) and s = 1 + n + 2/alpha, so
/// a successive-term test alone would understate the tail badly for large t.
/// The stop rule bounds the tail by the smaller of the geometric sum
/// |term| * z/(1-z) = |term| * t (term ratios stay below z) and the
/// polynomial envelope |term| * ((k+1)/(s-1) + 1), with a 4x safety margin.
inline double pfaff_series_factor(const ModelParams& params, double t,
                                  const EvalConfig& config = EvalConfig()) {
  if (!std::isfinite(t) || !(t >= 0.0))
    throw std::domain_error("pfaff_series_factor: requires finite t >= 0");
  if (t == 0.0) return 1.0;
  const double b = -2.0 / params.alpha;
  const double c = 1.0 + b;
  const double a = c - params.n;
  const double z = t / (1.0 + t);
  const double s = 1.0 + params.n + 2.0 / params.alpha;
  double sum = 1.0;
  double term = 1.0;
  for (long k = 0; k < config.max_terms; ++k) {
    term *= z * (a + k) * (b + k) / ((c + k) * (k + 1.0));
    sum += term;
    if (k < params.n) continue;  // sign pattern not settled yet
    const double horizon = std::min(t, (k + 1.0) / (s - 1.0) + 1.0);
    if (4.0 * std::abs(term) * horizon <= config.rel_tolerance * std::abs(sum)) return sum;
  }
  throw ConvergenceError("pfaff_series_factor: no convergence within " +
                         std::to_string(config.max_terms) +
                         " terms; t is too large for the configured budget");
}

/// Denominator of the exact coverage probability:
/// 2F1(n, -2/alpha; 1 - 2/alpha; -t) = (1+t)^{2/alpha} * G(t).
inline double hyp2f1_coverage_denominator(const ModelParams& params, double t,
                                          const EvalConfig& config = EvalConfig()) {
  return std::pow(1.0 + t, 2.0 / params.alpha) * pfaff_series_factor(params, t, config);
}

}  // namespace urc
