#pragma once

#include <functional>
#include <vector>

#include "fracheat/hurst.hpp"

namespace fracheat {

struct QuadratureSpec {
  enum class BaseRule { gauss_legendre, adaptive_simpson };
  BaseRule base_rule = BaseRule::gauss_legendre;
  int panels_per_axis = 8;
  bool singularity_split = true;  // exact handling of the |u-v|^sigma weight
  double rel_tolerance = 1e-9;
  int max_refinements = 8;

  void validate() const;  // throws std::invalid_argument
};

struct NormResult {
  double value = 0;
  double error_estimate = 0;
  bool converged = false;
  int refinements_used = 0;
};

/// Rectangle [u_lo,u_hi] x [v_lo,v_hi] carrying a weight |u - v - shift|^sigma
/// with sigma in (-1,0].  F may blow up at the (u_lo,v_lo) corner like a
/// power of (u+v); geometric panel grading toward that corner is applied when
/// grade_origin is set.
struct WeightedDomain {
  double u_lo = 0, u_hi = 1;
  double v_lo = 0, v_hi = 1;
  double shift = 0;
  bool grade_origin = false;
  std::vector<double> u_breaks;  // interior smoothness breakpoints of F
  std::vector<double> v_breaks;
};

using Smooth2D = std::function<double(double, double)>;

// integral over the domain of |u - v - shift|^sigma F(u,v) du dv.
// The weight is integrated with Gauss-Jacobi rules on the panels meeting the
// singular line, so F is the only thing approximated.
NormResult weighted_integral_2d(const Smooth2D& F, double sigma,
                                const WeightedDomain& dom, const QuadratureSpec& spec);

// alpha_H * integral over [0,t]^2 of |u-v|^{2H-2} F(u,v) du dv.
NormResult weighted_double_integral(const Smooth2D& F, const HurstParams& hp, double t,
                                    const QuadratureSpec& spec);

}  // namespace fracheat
