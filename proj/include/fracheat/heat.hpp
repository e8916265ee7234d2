#pragma once

#include <span>
#include <vector>

namespace fracheat {

struct SpaceTimePoint {
  double t;
  std::vector<double> x;
};

// Heat fundamental solution G(t,x) = (4 pi t)^{-d/2} exp(-|x|^2/(4t)) for
// t > 0 and 0 for t <= 0.
double green_eval(double t, std::span<const double> x);
double green_eval_radial(double t, double r, int d);

// g_{tx}(s,y) = G(t-s, x-y).
double g_tx_eval(const SpaceTimePoint& p, double s, std::span<const double> y);

// integral_{R^d} g_tx(s,y) g_tx(r,y) dy = (4 pi (2t-s-r))^{-d/2} for r,s < t,
// and 0 when either argument reaches t (the integrand vanishes).
double pair_integral_white(double t, double r, double s, int d);

// integral_{R^d} G(u,y-x) G(v,z-x) dx
//   = exp(-|y-z|^2 / (4(u+v))) (4 pi (u+v))^{-d/2},  u,v > 0.
double pair_integral_white_offset(double u, double v, std::span<const double> y,
                                  std::span<const double> z, int d);
double pair_integral_white_offset_radial(double u, double v, double dist, int d);

}  // namespace fracheat
