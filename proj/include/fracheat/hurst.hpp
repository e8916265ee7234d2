#pragma once

namespace fracheat {

/// Hurst index H in (1/2,1) together with the derived constants that appear
/// in the fractional covariance machinery:
///   alpha_H  = H(2H-1)
///   c_H      = [2^{2(1-H)} sqrt(pi)]^{-1} Gamma(H-1/2)/Gamma(1-H)
///   c_star_H = { alpha_H Gamma(3/2-H) / [Gamma(2-2H) Gamma(H-1/2)] }^{1/2}
struct HurstParams {
  double H;
  double alpha_H;
  double c_H;
  double c_star_H;
};

// Throws std::domain_error unless 1/2 < H < 1.
HurstParams derive_hurst_params(double H);

// q_alpha = (2^{1-alpha} sqrt(pi))^{-1} Gamma(alpha/2)/Gamma((1-alpha)/2),
// the constant pairing the |t|^{-(1-alpha)} kernel with the |tau|^{-alpha}
// spectral weight on a bounded interval.  q_alpha * gamma_{alpha,1} = 1.
double q_alpha(double alpha);

}  // namespace fracheat
