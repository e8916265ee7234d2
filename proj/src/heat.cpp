#include "fracheat/heat.hpp"

#include <cmath>
#include <stdexcept>

namespace fracheat {

namespace {
double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}
}  // namespace

double green_eval_radial(double t, double r, int d) {
  if (t <= 0) return 0.0;
  return std::pow(4.0 * M_PI * t, -0.5 * d) * std::exp(-r * r / (4.0 * t));
}

double green_eval(double t, std::span<const double> x) {
  double r2 = 0;
  for (double xi : x) r2 += xi * xi;
  return green_eval_radial(t, std::sqrt(r2), static_cast<int>(x.size()));
}

double g_tx_eval(const SpaceTimePoint& p, double s, std::span<const double> y) {
  if (y.size() != p.x.size()) throw std::invalid_argument("g_tx_eval: dimension mismatch");
  return green_eval_radial(p.t - s, std::sqrt(dist2(p.x, y)),
                           static_cast<int>(p.x.size()));
}

double pair_integral_white(double t, double r, double s, int d) {
  if (r >= t || s >= t) return 0.0;  // g vanishes
  return std::pow(4.0 * M_PI * (2.0 * t - s - r), -0.5 * d);
}

double pair_integral_white_offset_radial(double u, double v, double dist, int d) {
  if (!(u + v > 0)) throw std::domain_error("pair_integral_white_offset: u+v must be positive");
  return std::exp(-dist * dist / (4.0 * (u + v))) * std::pow(4.0 * M_PI * (u + v), -0.5 * d);
}

double pair_integral_white_offset(double u, double v, std::span<const double> y,
                                  std::span<const double> z, int d) {
  if (y.size() != z.size() || static_cast<int>(y.size()) != d)
    throw std::invalid_argument("pair_integral_white_offset: dimension mismatch");
  return pair_integral_white_offset_radial(u, v, std::sqrt(dist2(y, z)), d);
}

}  // namespace fracheat
