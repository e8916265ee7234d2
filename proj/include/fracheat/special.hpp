#pragma once

#include <functional>
#include <vector>

namespace fracheat {

// log-Gamma ratio exp(lgamma(a) - lgamma(b)); safe where direct Gamma overflows
double gamma_ratio(double a, double b);

// Lower incomplete gamma integral_0^x s^{a-1} e^{-s} ds (series, a > 0, x >= 0).
double lower_inc_gamma(double a, double x);

struct GaussRule {
  std::vector<double> nodes;    // on [0,1]
  std::vector<double> weights;
};

// Gauss-Legendre on [0,1]; cached per n.
const GaussRule& gauss_legendre(int n);

// Gauss-Jacobi rule for integral_0^1 x^sigma f(x) dx with sigma > -1,
// i.e. the x^sigma weight is absorbed into the weights.  Not cached (sigma
// varies); callers should reuse the returned rule.
GaussRule gauss_jacobi_power(int n, double sigma);

// integral_lo^hi f, fixed-order Gauss.
double gauss_panel(const std::function<double(double)>& f, double lo, double hi, int order);

// Classic recursive adaptive Simpson.
double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double abs_tol, int max_depth = 26);

// integral_0^infty s^{a-1} g(s) ds via the substitution s = e^x and
// trapezoid refinement on the real line.  Requires a > 0 and g positive-ish
// smooth with g(s) -> const as s->0 and enough decay at infinity that
// s^a g(s) -> 0 both ways.
double log_axis_integral(double a, const std::function<double(double)>& g,
                         double rel_tol = 1e-12);

/// Piecewise Chebyshev interpolant of a smooth function on [lo,hi];
/// used to cache expensive radial factors during covariance assembly.
class ChebCache {
 public:
  ChebCache() = default;
  ChebCache(const std::function<double(double)>& f, double lo, double hi,
            int degree = 24, int panels = 8);
  double operator()(double x) const;
  bool empty() const { return coeffs_.empty(); }

 private:
  double lo_ = 0, hi_ = 1;
  std::vector<std::vector<double>> coeffs_;  // per panel
};

}  // namespace fracheat
