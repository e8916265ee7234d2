#pragma once

#include <vector>

#include "fracheat/heat.hpp"
#include "fracheat/hurst.hpp"
#include "fracheat/kernels.hpp"
#include "fracheat/quadrature.hpp"

namespace fracheat {

// ||g_tx||^2 for the spatially white case:
//   alpha_H integral integral |u-v|^{2H-2} (4 pi (u+v))^{-d/2} du dv over [0,t]^2.
// Throws threshold_error unless H > d/4.
NormResult norm_g_white(const HurstParams& hp, int d, double t, const QuadratureSpec& quad);

/// Norm (or certified bracket) of g_tx in the colored setting.  For the
/// white/riesz families the value is exact and lower == upper; for
/// bessel/heat/poisson the pair brackets the norm via the family's two-sided
/// power bounds.
struct ColoredNorm {
  NormResult lower;
  NormResult upper;
  bool exact;  // lower and upper coincide
};

ColoredNorm norm_g_colored(const KernelSpec& spec, const HurstParams& hp, double t,
                           const QuadratureSpec& quad);

// <g_{t1 x1}, g_{t2 x2}> = alpha_H integral_0^{t1} integral_0^{t2}
//     |r - r'|^{2H-2} J_f(t1-r, t2-r', x1, x2) dr' dr.
NormResult covariance_solution(const KernelSpec& spec, const HurstParams& hp,
                               const SpaceTimePoint& p1, const SpaceTimePoint& p2,
                               const QuadratureSpec& quad);

struct ExistenceResult {
  bool admissible;
  double threshold;      // max{ (d - alpha_f)/4, 1/2 }, the effective bound on H
  double threshold_raw;  // (d - alpha_f)/4 as given by the existence condition
};

// Requires 1/2 < H < 1.
ExistenceResult existence_check(const KernelSpec& spec, double H);

// Norm integral restricted to 2t-s-r >= eps for each truncation; reveals
// convergence (Cauchy tail) or power-law blow-up as eps -> 0.
std::vector<NormResult> divergence_scan(const KernelSpec& spec, const HurstParams& hp,
                                        double t, std::span<const double> truncations);

// Predicted growth ratio of consecutive scan increments under halving
// truncations when the parameters are inadmissible: 2^{(d-alpha_f)/2 - 2H}.
double divergence_growth_ratio(const KernelSpec& spec, const HurstParams& hp);

}  // namespace fracheat
