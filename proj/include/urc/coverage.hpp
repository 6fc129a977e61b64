#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "urc/model.hpp"
#include "urc/specfun.hpp"

namespace urc {

/// The exact coverage curve and its eight closed-form companions.
/// Lb* lie at or below the exact curve, Ub* at or above, with one
/// deliberate exception: LbB is the tangent line at t = 0 and goes
/// negative for large t (kept unclamped so its divergence is visible).
enum class BoundKind {
  kExact,
  kLbA,     // c_n^{-1} (1+t)^{-2/alpha}, tight as t -> infinity
  kUbA,     // (1+t)^{-2/alpha}
  kLbB,     // 1 - 2nt/(alpha-2), tangent at t = 0, unclamped
  kUbB,     // c_n^{-1} t^{-2/alpha}, diverges at t = 0
  kLbC,     // (1 + nt)^{-2/(alpha-2)}
  kUbC,     // (1 + n alpha t/(alpha-2))^{-2/alpha}
  kLbX,     // (1+t)^{-2n/(alpha-2)}, the n-fold product of the n = 1 case
  kLbPlus,  // (1 + c_n^{alpha/2} t)^{-2/alpha}
};

inline constexpr BoundKind kAllBoundKinds[] = {
    BoundKind::kExact, BoundKind::kLbA, BoundKind::kUbA,
    BoundKind::kLbB,   BoundKind::kUbB, BoundKind::kLbC,
    BoundKind::kUbC,   BoundKind::kLbX, BoundKind::kLbPlus};

/// Stable token used in CLI arguments and CSV column headers.
inline const char* bound_kind_token(BoundKind kind) {
  switch (kind) {
    case BoundKind::kExact: return "exact";
    case BoundKind::kLbA: return "lb_a";
    case BoundKind::kUbA: return "ub_a";
    case BoundKind::kLbB: return "lb_b";
    case BoundKind::kUbB: return "ub_b";
    case BoundKind::kLbC: return "lb_c";
    case BoundKind::kUbC: return "ub_c";
    case BoundKind::kLbX: return "lb_x";
    case BoundKind::kLbPlus: return "lb_plus";
  }
  return "?";
}

inline std::optional<BoundKind> parse_bound_kind(std::string_view token) {
  for (BoundKind kind : kAllBoundKinds)
    if (token == bound_kind_token(kind)) return kind;
  return std::nullopt;
}

/// One evaluated point of a coverage curve.
struct CoverageValue {
  double value;
  BoundKind kind;
  double t;
  ModelParams params;
};

/// Exact n-successive coverage probability
/// p_n(t) = 1 / 2F1(n, -2/alpha; 1 - 2/alpha; -t).
/// Strictly decreasing in t, equal to 1 at t = 0.
inline double coverage_exact(const ModelParams& params, double t,
                             const EvalConfig& config = EvalConfig()) {
  return 1.0 / hyp2f1_coverage_denominator(params, t, config);
}

/// Closed-form bound of the requested kind; kExact dispatches to the series.
inline double coverage_bound(const ModelParams& params, double t, BoundKind kind,
                             const EvalConfig& config = EvalConfig()) {
  if (!std::isfinite(t) || !(t >= 0.0))
    throw std::domain_error("coverage_bound: requires finite t >= 0");
  const double alpha = params.alpha;
  const double n = params.n;
  switch (kind) {
    case BoundKind::kExact:
      return coverage_exact(params, t, config);
    case BoundKind::kLbA:
      return std::pow(1.0 + t, -2.0 / alpha) / coverage_constant(params);
    case BoundKind::kUbA:
      return std::pow(1.0 + t, -2.0 / alpha);
    case BoundKind::kLbB:
      return 1.0 - 2.0 * n * t / (alpha - 2.0);
    case BoundKind::kUbB:
      if (t <= 0.0) throw std::domain_error("coverage_bound: UbB requires t > 0");
      return std::pow(t, -2.0 / alpha) / coverage_constant(params);
    case BoundKind::kLbC:
      return std::pow(1.0 + n * t, -2.0 / (alpha - 2.0));
    case BoundKind::kUbC:
      return std::pow(1.0 + n * alpha * t / (alpha - 2.0), -2.0 / alpha);
    case BoundKind::kLbX:
      return std::pow(1.0 + t, -2.0 * n / (alpha - 2.0));
    case BoundKind::kLbPlus:
      return std::pow(1.0 + std::pow(coverage_constant(params), alpha / 2.0) * t, -2.0 / alpha);
  }
  throw std::invalid_argument("coverage_bound: unknown kind");
}

/// Convenience wrapper carrying the evaluation context with the number.
inline CoverageValue coverage_evaluate(const ModelParams& params, double t, BoundKind kind,
                                       const EvalConfig& config = EvalConfig()) {
  return {coverage_bound(params, t, kind, config), kind, t, params};
}

/// Threshold t at which the given curve crosses reliability level eta,
/// i.e. the largest t with curve(t) >= eta. Closed form for every bound;
/// bracketing bisection on the series for kExact (|p - eta| <= 1e-10).
/// For kLbA the level must satisfy eta < 1/c_n or no crossing exists.
inline double coverage_inverse(const ModelParams& params, double eta, BoundKind kind,
                               const EvalConfig& config = EvalConfig()) {
  if (!std::isfinite(eta) || !(eta > 0.0) || !(eta < 1.0))
    throw std::domain_error("coverage_inverse: requires eta in (0, 1)");
  const double alpha = params.alpha;
  const double n = params.n;
  switch (kind) {
    case BoundKind::kExact: {
      double lo = 0.0;
      double hi = 1.0;
      while (coverage_exact(params, hi, config) > eta) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw ConvergenceError("coverage_inverse: bracket search ran away");
      }
      double mid = 0.5 * (lo + hi);
      for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double p = coverage_exact(params, mid, config);
        if (std::abs(p - eta) <= 1e-10) return mid;
        (p > eta ? lo : hi) = mid;
        if (hi - lo <= 1e-16 * (1.0 + hi)) break;
      }
      return mid;
    }
    case BoundKind::kLbA: {
      const double cn = coverage_constant(params);
      if (!(eta < 1.0 / cn))
        throw std::domain_error("coverage_inverse: LbA never reaches eta >= 1/c_n");
      return std::pow(cn * eta, -alpha / 2.0) - 1.0;
    }
    case BoundKind::kUbA:
      return std::pow(eta, -alpha / 2.0) - 1.0;
    case BoundKind::kLbB:
      return (1.0 - eta) * (alpha - 2.0) / (2.0 * n);
    case BoundKind::kUbB:
      return std::pow(coverage_constant(params) * eta, -alpha / 2.0);
    case BoundKind::kLbC:
      return (std::pow(eta, -(alpha - 2.0) / 2.0) - 1.0) / n;
    case BoundKind::kUbC:
      return (std::pow(eta, -alpha / 2.0) - 1.0) * (alpha - 2.0) / (n * alpha);
    case BoundKind::kLbX:
      return std::pow(eta, -(alpha - 2.0) / (2.0 * n)) - 1.0;
    case BoundKind::kLbPlus:
      return (std::pow(eta, -alpha / 2.0) - 1.0) *
             std::pow(coverage_constant(params), -alpha / 2.0);
  }
  throw std::invalid_argument("coverage_inverse: unknown kind");
}

}  // namespace urc
