#pragma once

#include <complex>

#include "fracheat/hurst.hpp"
#include "fracheat/quadrature.hpp"
#include "fracheat/sampled.hpp"

namespace fracheat {

// R_H(t,s) = (t^{2H} + s^{2H} - |t-s|^{2H}) / 2, t,s >= 0.
double fbm_covariance(const HurstParams& hp, double t, double s);

struct ValueWithError {
  double value;
  double error_estimate;
};

enum class KernelQuadMethod { substituted_gauss, adaptive_simpson };

// Volterra kernel of the fractional covariance,
//   K_H(t,s) = c*_H s^{1/2-H} integral_s^t (u-s)^{H-3/2} u^{H-1/2} du,  0 < s < t.
// The (u-s)^{H-3/2} singularity is removed by the substitution
// u = s + z^{1/(H-1/2)} before quadrature.
ValueWithError kernel_K_H(const HurstParams& hp, double t, double s,
                          KernelQuadMethod method = KernelQuadMethod::substituted_gauss);

// Right-sided fractional integral of a sampled function at t:
//   (I_{T-}^alpha f)(t) = Gamma(alpha)^{-1} integral_t^T (u-t)^{alpha-1} f(u) du,
// T = end of the grid.  The power factor is integrated exactly against the
// piecewise-linear interpolant on every subinterval.
double fractional_integral_right(const SampledFunction& f, double alpha, double t);

// (K*_H phi)(s) = c*_H Gamma(H-1/2) s^{-(H-1/2)}
//                  I_{T-}^{H-1/2}( u^{H-1/2} phi(u) )(s),  0 < s < T.
double transfer_operator(const SampledFunction& phi, const HurstParams& hp, double s);

// F_{a,b} phi(tau) = integral_a^b e^{-i tau t} phi(t) dt, exact per linear piece.
std::complex<double> restricted_fourier(const SampledFunction& phi, double a, double b,
                                        double tau);

struct PairingResult {
  double lhs;         // integral integral phi(u) |u-v|^{-(1-alpha)} psi(v)
  double rhs;         // q_alpha integral |tau|^{-alpha} F phi conj(F psi)
  double tail_bound;  // analytic bound on the truncated frequency tail
  bool converged;
};

// Both sides of the bounded-domain spectral identity, for comparison.
PairingResult lemma_A1_pairing(const SampledFunction& phi, const SampledFunction& psi,
                               double a, double b, double alpha,
                               double rel_tol = 1e-6);

}  // namespace fracheat
