#include "fracheat/hurst.hpp"

#include <cmath>
#include <stdexcept>

namespace fracheat {

HurstParams derive_hurst_params(double H) {
  if (!(H > 0.5) || !(H < 1.0))
    throw std::domain_error("Hurst index must lie in (1/2, 1)");
  HurstParams hp;
  hp.H = H;
  hp.alpha_H = H * (2.0 * H - 1.0);
  // Gamma ratios through lgamma; both arguments stay positive on (1/2,1)
  hp.c_H = std::exp(std::lgamma(H - 0.5) - std::lgamma(1.0 - H) -
                    2.0 * (1.0 - H) * std::log(2.0) - 0.5 * std::log(M_PI));
  double log_cs2 = std::log(hp.alpha_H) + std::lgamma(1.5 - H) -
                   std::lgamma(2.0 - 2.0 * H) - std::lgamma(H - 0.5);
  hp.c_star_H = std::exp(0.5 * log_cs2);
  return hp;
}

double q_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("q_alpha: alpha must lie in (0,1)");
  return std::exp(std::lgamma(0.5 * alpha) - std::lgamma(0.5 * (1.0 - alpha)) -
                  (1.0 - alpha) * std::log(2.0) - 0.5 * std::log(M_PI));
}

}  // namespace fracheat
