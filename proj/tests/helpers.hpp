#pragma once

#include <cmath>
#include <functional>

#include "fracheat/special.hpp"

namespace testutil {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// integral_0^lo f with deep dyadic grading toward 0 (handles u^{sigma},
// sigma > -1, endpoint behavior) and graded panels toward lo.
inline double graded_integral(const std::function<double(double)>& f, double lo,
                              int order = 16, int depth = 150) {
  double total = 0;
  double split = 0.5 * lo;
  double a = split * std::ldexp(1.0, -depth);
  for (int k = depth - 1; k >= 0; --k) {
    double e = split * std::ldexp(1.0, -k);
    total += fracheat::gauss_panel(f, a, e, order);
    a = e;
  }
  for (int k = 1; k <= 45; ++k) {
    double e = lo - (lo - split) * std::ldexp(1.0, -k);
    total += fracheat::gauss_panel(f, a, e, order);
    a = e;
  }
  return total;
}

}  // namespace testutil
