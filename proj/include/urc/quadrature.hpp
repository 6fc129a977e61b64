#pragma once

#include <cmath>
#include <vector>

#include "urc/model.hpp"

namespace urc {

/// Adaptive Gauss-Kronrod (G7, K15) integration of f over [lo, hi] to an
/// absolute tolerance. The Gauss-Kronrod difference serves as the local
/// error estimate (conservative: no QUADPACK rescaling); a panel is
/// accepted once its estimate fits its width-proportional share of the
/// tolerance. Throws ConvergenceError if max_panels splits are not enough.
template <class F>
double integrate_adaptive(F&& f, double lo, double hi, double abs_tolerance,
                          int max_panels = 4096) {
  // K15 abscissae (positive half) and weights; rows 1, 3, 5, 7 are the
  // embedded G7 nodes.
  constexpr double kNodes[8] = {
      0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
      0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
      0.20778495500789846760, 0.0};
  constexpr double kWeights[8] = {
      0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
      0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
      0.20443294007529889241, 0.20948214108472782801};
  constexpr double kGaussWeights[4] = {
      0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
      0.41795918367346938776};

  const double total_width = hi - lo;
  if (!(total_width > 0.0)) return 0.0;

  struct Panel {
    double a, b;
  };
  auto evaluate = [&](const Panel& panel, double& kronrod) {
    const double mid = 0.5 * (panel.a + panel.b);
    const double half = 0.5 * (panel.b - panel.a);
    const double f_mid = f(mid);
    double k_sum = kWeights[7] * f_mid;
    double g_sum = kGaussWeights[3] * f_mid;
    for (int i = 0; i < 7; ++i) {
      const double offset = half * kNodes[i];
      const double pair = f(mid - offset) + f(mid + offset);
      k_sum += kWeights[i] * pair;
      if (i % 2 == 1) g_sum += kGaussWeights[(i - 1) / 2] * pair;
    }
    kronrod = half * k_sum;
    return std::abs(half * (k_sum - g_sum));  // error estimate
  };

  std::vector<Panel> stack{{lo, hi}};
  double sum = 0.0;
  int panels_used = 0;
  while (!stack.empty()) {
    const Panel panel = stack.back();
    stack.pop_back();
    if (++panels_used > max_panels)
      throw ConvergenceError("integrate_adaptive: panel budget exhausted");
    double kronrod = 0.0;
    const double error = evaluate(panel, kronrod);
    const double share = abs_tolerance * (panel.b - panel.a) / total_width;
    if (error <= share || panel.b - panel.a <= 1e-14 * total_width) {
      sum += kronrod;
    } else {
      const double mid = 0.5 * (panel.a + panel.b);
      stack.push_back({panel.a, mid});
      stack.push_back({mid, panel.b});
    }
  }
  return sum;
}

}  // namespace urc
