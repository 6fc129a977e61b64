#pragma once

#include <cmath>
#include <utility>

#include "urc/model.hpp"

namespace urc {

/// Golden-section maximization of a unimodal f on [lo, hi]. Stops when the
/// interval is shorter than x_tolerance and returns its midpoint. Ties
/// (f(c) == f(d)) keep the left subinterval, biasing plateaus toward the
/// smaller abscissa.
template <class F>
double golden_section_max(F&& f, double lo, double hi, double x_tolerance) {
  constexpr double kInvPhi = 0.61803398874989484820;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > x_tolerance) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace urc
