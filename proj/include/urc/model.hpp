#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace urc {

/// Thrown when an iterative scheme exhausts its budget before reaching
/// tolerance. Distinct from std::domain_error: the input was legal, the
/// configured effort was not enough.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model parameters shared by every quantity in the library: path-loss
/// exponent alpha and the number of successive receptions n that must all
/// succeed.
struct ModelParams {
  double alpha;
  int n;

  ModelParams(double alpha_, int n_) : alpha(alpha_), n(n_) {
    if (!std::isfinite(alpha) || !(alpha > 2.0))
      throw std::invalid_argument("ModelParams: alpha must be finite and > 2");
    if (n < 1) throw std::invalid_argument("ModelParams: n must be >= 1");
  }
};

/// Convergence controls for series evaluation.
struct EvalConfig {
  double rel_tolerance;
  long max_terms;

  explicit EvalConfig(double rel_tolerance_ = 1e-12, long max_terms_ = 100000)
      : rel_tolerance(rel_tolerance_), max_terms(max_terms_) {
    if (!(rel_tolerance > 0.0) || !(rel_tolerance < 1e-3))
      throw std::invalid_argument("EvalConfig: rel_tolerance must be in (0, 1e-3)");
    if (max_terms < 100) throw std::invalid_argument("EvalConfig: max_terms must be >= 100");
  }
};

}  // namespace urc
