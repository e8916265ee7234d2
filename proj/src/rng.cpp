#include "fracheat/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace fracheat {

double RandomStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller on explicit uniforms for platform-independent streams
  double u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double c = std::cos(2.0 * M_PI * u2);
  double s = std::sin(2.0 * M_PI * u2);
  spare_ = r * s;
  have_spare_ = true;
  return r * c;
}

double RandomStream::chi2(int dof) {
  if (dof < 0) throw std::domain_error("chi2: negative degrees of freedom");
  double sum = 0;
  for (int i = 0; i < dof; ++i) {
    double z = normal();
    sum += z * z;
  }
  return sum;
}

}  // namespace fracheat
