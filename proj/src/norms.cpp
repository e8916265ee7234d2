#include "fracheat/norms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracheat/errors.hpp"
#include "fracheat/special.hpp"

namespace fracheat {

namespace {

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

void require_admissible(const KernelSpec& spec, double H) {
  double raw = 0.25 * (spec.d - spec.alpha_f);
  if (!(H > raw)) {
    std::ostringstream os;
    os << "existence condition violated: requires H > (d - alpha_f)/4 = " << raw
       << " for " << family_name(spec.family) << " (H = " << H << ", d = " << spec.d
       << ")";
    throw threshold_error(os.str(), raw);
  }
}

bool needs_quadrature(KernelFamily f) {
  return f == KernelFamily::bessel || f == KernelFamily::poisson ||
         f == KernelFamily::riesz;
}

// J_f(u,v,.) as a function of p = u+v for one site separation, cached on a
// log grid so covariance assembly does not re-run the radial quadratures at
// every Gauss node.
class PairFactor {
 public:
  PairFactor(const KernelSpec& spec, double w, double p_max) : spec_(spec), w_(w) {
    bool closed = spec.family == KernelFamily::white_noise ||
                  spec.family == KernelFamily::heat ||
                  (spec.family == KernelFamily::riesz && w == 0.0);
    if (closed) return;
    p_min_ = p_max * std::ldexp(1.0, -90);
    lo_ = std::log(p_min_);
    double hi = std::log(p_max);
    if (w_ == 0.0) {
      // cache I_f(p) * p^beta, bounded near the corner
      beta_ = 0.5 * (spec.d - spec.alpha_f);
      cache_ = ChebCache(
          [&](double x) {
            double p = std::exp(x);
            return pair_expectation_I(spec_, p) * std::pow(p, beta_);
          },
          lo_, hi, 20, 48);
    } else {
      cache_ = ChebCache(
          [&](double x) { return pair_expectation_J(spec_, std::exp(x), w_); },
          lo_, hi, 20, 48);
    }
    cached_ = true;
  }

  double operator()(double p) const {
    if (!cached_) {
      if (w_ == 0.0) return pair_expectation_I(spec_, p);
      return pair_expectation_J(spec_, p, w_);
    }
    double pc = std::max(p, p_min_);
    double x = std::log(pc);
    double v = cache_(x);
    if (w_ == 0.0) return v * std::pow(pc, -beta_);
    return v;
  }

 private:
  KernelSpec spec_;
  double w_;
  double p_min_ = 0, lo_ = 0, beta_ = 0;
  bool cached_ = false;
  ChebCache cache_;
};

}  // namespace

ExistenceResult existence_check(const KernelSpec& spec, double H) {
  if (!(H > 0.5) || !(H < 1.0))
    throw std::domain_error("existence_check: H must lie in (1/2, 1)");
  ExistenceResult r;
  r.threshold_raw = 0.25 * (spec.d - spec.alpha_f);
  r.threshold = std::max(r.threshold_raw, 0.5);
  r.admissible = H > r.threshold_raw;
  return r;
}

NormResult norm_g_white(const HurstParams& hp, int d, double t, const QuadratureSpec& quad) {
  if (d < 1) throw std::invalid_argument("norm_g_white: d >= 1");
  if (!(t > 0)) throw std::domain_error("norm_g_white: t > 0");
  if (!(hp.H > 0.25 * d)) {
    std::ostringstream os;
    os << "existence condition violated: requires H > d/4 = " << 0.25 * d
       << " (H = " << hp.H << ", d = " << d << ")";
    throw threshold_error(os.str(), 0.25 * d);
  }
  Smooth2D F = [d](double u, double v) {
    return std::pow(4.0 * M_PI * (u + v), -0.5 * d);
  };
  return weighted_double_integral(F, hp, t, quad);
}

ColoredNorm norm_g_colored(const KernelSpec& spec, const HurstParams& hp, double t,
                           const QuadratureSpec& quad) {
  if (!(t > 0)) throw std::domain_error("norm_g_colored: t > 0");
  require_admissible(spec, hp.H);
  ColoredNorm out;
  if (spec.family == KernelFamily::white_noise || spec.family == KernelFamily::riesz) {
    Smooth2D F = [&](double u, double v) { return pair_expectation_I(spec, u + v); };
    NormResult r = weighted_double_integral(F, hp, t, quad);
    out.lower = out.upper = r;
    out.exact = true;
    return out;
  }
  // bracket families: one integral of the pure power, scaled by A_f and B_f
  const double beta = 0.5 * (spec.d - spec.alpha_f);
  Smooth2D F = [beta](double u, double v) { return std::pow(u + v, -beta); };
  NormResult base = weighted_double_integral(F, hp, t, quad);
  IfBounds b = closed_form_I_f(spec, t, 0.5 * t, 0.5 * t);  // q = t
  double a_f = b.lower * std::pow(t, beta);
  double b_f = b.upper * std::pow(t, beta);
  out.lower = base;
  out.lower.value *= a_f;
  out.lower.error_estimate *= a_f;
  out.upper = base;
  out.upper.value *= b_f;
  out.upper.error_estimate *= b_f;
  out.exact = false;
  return out;
}

NormResult covariance_solution(const KernelSpec& spec, const HurstParams& hp,
                               const SpaceTimePoint& p1, const SpaceTimePoint& p2,
                               const QuadratureSpec& quad) {
  if (p1.x.size() != p2.x.size() || static_cast<int>(p1.x.size()) != spec.d)
    throw std::invalid_argument("covariance_solution: dimension mismatch");
  if (!(p1.t > 0) || !(p2.t > 0))
    throw std::domain_error("covariance_solution: times must be positive");
  require_admissible(spec, hp.H);

  const double t1 = p1.t, t2 = p2.t;
  const double w = dist(p1.x, p2.x);

  // coordinates u = t1 - r, v = t2 - r'; the fractional weight becomes
  // |u - v - (t1 - t2)|^{2H-2} and J_f depends on p = u + v only
  PairFactor J(spec, w, t1 + t2);
  WeightedDomain dom;
  dom.u_hi = t1;
  dom.v_hi = t2;
  // J is singular at p = 0 on the diagonal (w = 0) and has a steep
  // exp(-w^2/4p) layer there otherwise; grade toward the corner either way
  dom.shift = t1 - t2;
  dom.grade_origin = true;
  Smooth2D F = [&](double u, double v) { return J(u + v); };
  NormResult res = weighted_integral_2d(F, 2.0 * hp.H - 2.0, dom, quad);
  res.value *= hp.alpha_H;
  res.error_estimate *= hp.alpha_H;
  return res;
}

namespace {

// 1-D reduction of the truncated norm integral: with p = 2t-s-r,
//   alpha_H int int_{p >= eps} |s-r|^{2H-2} I(p) dr ds
//     = alpha_H/(2H-1) int_eps^{2t} I(p) min(p, 2t-p)^{2H-1} dp.
double truncated_norm_1d(const KernelSpec& spec, const HurstParams& hp, double t,
                         double eps, int order) {
  const double twoH1 = 2.0 * hp.H - 1.0;
  auto I = [&](double p) { return pair_expectation_I(spec, p); };
  double total = 0;
  // [eps, t]: geometric panels from eps
  double lo = eps;
  while (lo < t) {
    double hi = std::min(2.0 * lo, t);
    total += gauss_panel([&](double p) { return I(p) * std::pow(p, twoH1); }, lo, hi, order);
    lo = hi;
  }
  // [t, 2t] with the (2t-p)^{2H-1} endpoint weight handled by Gauss-Jacobi
  if (eps < 2.0 * t) {
    double a = std::max(eps, t);
    GaussRule jr = gauss_jacobi_power(order, twoH1);
    // p = 2t - (2t - a) x, weight (2t-p)^{2H-1} = ((2t-a) x)^{2H-1}
    double len = 2.0 * t - a;
    double scale = std::pow(len, twoH1 + 1.0);
    for (std::size_t i = 0; i < jr.nodes.size(); ++i)
      total += scale * jr.weights[i] * I(2.0 * t - len * jr.nodes[i]);
  }
  return hp.alpha_H / twoH1 * total;
}

}  // namespace

std::vector<NormResult> divergence_scan(const KernelSpec& spec, const HurstParams& hp,
                                        double t, std::span<const double> truncations) {
  if (!(t > 0)) throw std::domain_error("divergence_scan: t > 0");
  double prev = truncations.empty() ? 0.0 : truncations.front() * 2.0;
  for (double e : truncations) {
    if (!(e > 0) || !(e < prev))
      throw std::invalid_argument("divergence_scan: truncations must decrease to 0+");
    prev = e;
  }
  std::vector<NormResult> out;
  out.reserve(truncations.size());
  for (double eps : truncations) {
    NormResult r;
    double v1 = truncated_norm_1d(spec, hp, t, eps, 24);
    double v2 = truncated_norm_1d(spec, hp, t, eps, 32);
    r.value = v2;
    r.error_estimate = std::abs(v2 - v1);
    r.converged = r.error_estimate <= 1e-8 * std::max(std::abs(v2), 1e-300);
    r.refinements_used = 1;
    out.push_back(r);
  }
  return out;
}

double divergence_growth_ratio(const KernelSpec& spec, const HurstParams& hp) {
  double beta = 0.5 * (spec.d - spec.alpha_f);
  return std::pow(2.0, beta - 2.0 * hp.H);
}

}  // namespace fracheat
