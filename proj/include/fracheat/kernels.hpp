#pragma once

#include <optional>
#include <span>
#include <string>

namespace fracheat {

enum class KernelFamily { white_noise, riesz, bessel, heat, poisson };

std::string family_name(KernelFamily f);
KernelFamily family_from_name(const std::string& name);  // throws on unknown

/// One of the admissible spatial covariance families.  `constant` is the
/// kernel's multiplicative constant and `alpha_f` the exponent entering the
/// existence condition H > (d - alpha_f)/4.
struct KernelSpec {
  KernelFamily family;
  double alpha;     // kernel parameter (unused for white noise)
  int d;            // spatial dimension
  double constant;  // gamma_{alpha,d} / gamma'_alpha / gamma''_{alpha,d} / gamma'''_{alpha,d}
  double alpha_f;   // riesz: alpha, bessel/heat/white: 0, poisson: -1
};

// Validates the family-specific parameter ranges (riesz needs 0 < alpha < d,
// the others alpha > 0) and fills the derived constants.
KernelSpec make_kernel(KernelFamily family, double alpha, int d);

// Pointwise kernel value f(x); +infinity at the origin when the kernel is
// singular there.  White noise has no pointwise kernel and throws.
double kernel_eval(const KernelSpec& spec, std::span<const double> x);
double kernel_eval_radial(const KernelSpec& spec, double r);

struct SpectralValue {
  double value;  // density as printed for the family
  bool printed_consistent_with_kernel;
};

// Spectral density mu(xi)/d(xi) as printed for each family, together with a
// family-level flag recording whether Fourier inversion of that density
// numerically reproduces kernel_eval (it does not for bessel/heat/poisson;
// see spectral_consistency_ratio).
SpectralValue spectral_density(const KernelSpec& spec, std::span<const double> xi);

// d=1 diagnostic: (integral e^{-i xi x} mu(xi) dxi) / f(x) at a reference x.
// Equals 1 for a density consistent with the kernel's normalization.
double spectral_consistency_ratio(const KernelSpec& spec, double x);

/// Exact value and/or two-sided power bounds for
///   I_f(r,s) = integral integral g_tx(s,y) f(y-z) g_tx(r,z) dy dz
///            = E[f(U)], U ~ N(0, 2(2t-s-r) I_d).
/// `lower`/`upper` are A_f,B_f * (2t-s-r)^{-(d-alpha_f)/2}; for the poisson
/// family the lower constant is valid for 2t-s-r >= alpha^2/2 and the upper
/// for 2t-s-r <= 2t (always true).
struct IfBounds {
  std::optional<double> exact;
  double lower;
  double upper;
};

IfBounds closed_form_I_f(const KernelSpec& spec, double t, double r, double s);

double existence_exponent(const KernelSpec& spec);

// E[f(U)] with |U|^2 = 2 q W_d, evaluated by deterministic quadrature
// (closed form for white/riesz/heat).  q = 2t-s-r > 0.
double pair_expectation_I(const KernelSpec& spec, double q);

// J_f(u,v,y,z) = E[f(y-z+U)], U ~ N(0, 2(u+v) I_d), as a function of
// u+v and w = |y-z|; deterministic 1-D quadrature per family.
double pair_expectation_J(const KernelSpec& spec, double uv, double w);

}  // namespace fracheat
