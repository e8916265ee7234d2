#include "fracheat/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracheat/special.hpp"

namespace fracheat {

namespace {

double norm2(std::span<const double> x) {
  double s = 0;
  for (double xi : x) s += xi * xi;
  return s;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::string family_name(KernelFamily f) {
  switch (f) {
    case KernelFamily::white_noise: return "white";
    case KernelFamily::riesz: return "riesz";
    case KernelFamily::bessel: return "bessel";
    case KernelFamily::heat: return "heat";
    case KernelFamily::poisson: return "poisson";
  }
  return "?";
}

KernelFamily family_from_name(const std::string& name) {
  if (name == "white" || name == "white_noise") return KernelFamily::white_noise;
  if (name == "riesz") return KernelFamily::riesz;
  if (name == "bessel") return KernelFamily::bessel;
  if (name == "heat") return KernelFamily::heat;
  if (name == "poisson") return KernelFamily::poisson;
  throw std::invalid_argument("unknown kernel family: " + name);
}

KernelSpec make_kernel(KernelFamily family, double alpha, int d) {
  if (d < 1) throw std::invalid_argument("kernel dimension must be >= 1");
  KernelSpec s;
  s.family = family;
  s.alpha = alpha;
  s.d = d;
  switch (family) {
    case KernelFamily::white_noise:
      s.alpha = 0;
      s.constant = 1;
      s.alpha_f = 0;
      break;
    case KernelFamily::riesz:
      if (!(alpha > 0) || !(alpha < d))
        throw std::invalid_argument("riesz kernel requires 0 < alpha < d");
      // gamma_{alpha,d} = 2^{d-alpha} pi^{d/2} Gamma((d-alpha)/2)/Gamma(alpha/2)
      s.constant = std::exp((d - alpha) * std::log(2.0) + 0.5 * d * std::log(M_PI) +
                            std::lgamma(0.5 * (d - alpha)) - std::lgamma(0.5 * alpha));
      s.alpha_f = alpha;
      break;
    case KernelFamily::bessel:
      if (!(alpha > 0)) throw std::invalid_argument("bessel kernel requires alpha > 0");
      s.constant = std::pow(4.0 * M_PI, 0.5 * alpha) * std::tgamma(0.5 * alpha);
      s.alpha_f = 0;
      break;
    case KernelFamily::heat:
      if (!(alpha > 0)) throw std::invalid_argument("heat kernel requires alpha > 0");
      s.constant = std::pow(4.0 * M_PI * alpha, -0.5 * d);
      s.alpha_f = 0;
      break;
    case KernelFamily::poisson:
      if (!(alpha > 0)) throw std::invalid_argument("poisson kernel requires alpha > 0");
      s.constant = std::pow(M_PI, -0.5 * (d + 1)) * std::tgamma(0.5 * (d + 1)) * alpha;
      s.alpha_f = -1;
      break;
  }
  return s;
}

double kernel_eval_radial(const KernelSpec& spec, double r) {
  const double d = spec.d, a = spec.alpha;
  switch (spec.family) {
    case KernelFamily::white_noise:
      throw std::domain_error("white noise has no pointwise kernel");
    case KernelFamily::riesz:
      if (r == 0) return kInf;
      return spec.constant * std::pow(r, a - d);
    case KernelFamily::bessel: {
      if (r == 0)
        return a > d ? spec.constant * std::tgamma(0.5 * (a - d)) : kInf;
      // integral_0^infty w^{(a-d)/2-1} e^{-w - r^2/(4w)} dw, log substitution
      const double r2 = 0.25 * r * r;
      double val;
      if (a > d) {
        val = log_axis_integral(0.5 * (a - d),
                                [&](double w) { return std::exp(-w - r2 / w); });
      } else {
        // shift the power into the exponent so log_axis_integral sees a > 0
        val = log_axis_integral(1.0, [&](double w) {
          return std::pow(w, 0.5 * (a - d) - 1.0) * std::exp(-w - r2 / w);
        });
      }
      return spec.constant * val;
    }
    case KernelFamily::heat:
      return spec.constant * std::exp(-r * r / (4.0 * a));
    case KernelFamily::poisson:
      return spec.constant * std::pow(r * r + a * a, -0.5 * (d + 1.0));
  }
  return 0;
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x) {
  if (static_cast<int>(x.size()) != spec.d)
    throw std::invalid_argument("kernel_eval: point dimension mismatch");
  return kernel_eval_radial(spec, std::sqrt(norm2(x)));
}

SpectralValue spectral_density(const KernelSpec& spec, std::span<const double> xi) {
  double r2 = norm2(xi);
  switch (spec.family) {
    case KernelFamily::white_noise:
      return {1.0, true};  // Lebesgue spectral measure
    case KernelFamily::riesz:
      return {std::pow(r2, -0.5 * spec.alpha), true};
    case KernelFamily::bessel:
      return {std::pow(1.0 + r2, -0.5 * spec.alpha), false};
    case KernelFamily::heat:
      return {std::exp(-M_PI * M_PI * spec.alpha * r2), false};
    case KernelFamily::poisson:
      return {std::exp(-4.0 * M_PI * M_PI * spec.alpha * std::sqrt(r2)), false};
  }
  return {0, false};
}

double spectral_consistency_ratio(const KernelSpec& spec, double x) {
  if (spec.d != 1)
    throw std::domain_error("spectral_consistency_ratio: implemented for d = 1");
  if (spec.family == KernelFamily::white_noise || spec.family == KernelFamily::riesz)
    throw std::domain_error("spectral_consistency_ratio: density not integrable");
  // integral e^{-i xi x} mu(xi) dxi = 2 integral_0^infty cos(xi x) mu(xi) dxi
  auto mu = [&](double xi) {
    double v[1] = {xi};
    return spectral_density(spec, v).value;
  };
  double integral = 0;
  const double step = M_PI / std::max(1.0, std::abs(x));
  double lo = 0;
  for (int k = 0; k < 200000; ++k) {
    double hi = lo + step;
    double piece = gauss_panel([&](double xi) { return std::cos(xi * x) * mu(xi); },
                               lo, hi, 12);
    integral += piece;
    lo = hi;
    if (mu(hi) < 1e-16 * mu(0)) break;
  }
  integral *= 2.0;
  return integral / kernel_eval_radial(spec, std::abs(x));
}

double existence_exponent(const KernelSpec& spec) { return spec.alpha_f; }

double pair_expectation_I(const KernelSpec& spec, double q) {
  if (!(q > 0)) throw std::domain_error("pair_expectation_I: requires 2t-s-r > 0");
  const double d = spec.d, a = spec.alpha;
  switch (spec.family) {
    case KernelFamily::white_noise:
      return std::pow(4.0 * M_PI * q, -0.5 * d);
    case KernelFamily::riesz: {
      double p = 0.5 * (d - a);
      double moment = std::exp(-p * std::log(2.0) + std::lgamma(0.5 * d - p) -
                               std::lgamma(0.5 * d));
      return spec.constant * std::pow(2.0 * q, -p) * moment;
    }
    case KernelFamily::heat:
      return spec.constant * std::pow(1.0 + q / a, -0.5 * d);
    case KernelFamily::bessel:
      // gamma' integral w^{a/2-1} e^{-w} (w+q)^{-d/2} dw
      return spec.constant *
             log_axis_integral(0.5 * a, [&](double w) {
               return std::exp(-w) * std::pow(w + q, -0.5 * d);
             });
    case KernelFamily::poisson: {
      // gamma''' E (2qW_d + a^2)^{-(d+1)/2} over the chi-square density
      double norm = std::exp(-0.5 * d * std::log(2.0) - std::lgamma(0.5 * d));
      return spec.constant * norm *
             log_axis_integral(0.5 * d, [&](double w) {
               return std::exp(-0.5 * w) * std::pow(2.0 * q * w + a * a, -0.5 * (d + 1.0));
             });
    }
  }
  return 0;
}

double pair_expectation_J(const KernelSpec& spec, double uv, double w) {
  if (!(uv > 0)) throw std::domain_error("pair_expectation_J: requires u+v > 0");
  const double d = spec.d, a = spec.alpha;
  const double sig2 = 2.0 * uv;  // per-coordinate variance of U
  switch (spec.family) {
    case KernelFamily::white_noise:
      return std::exp(-w * w / (4.0 * uv)) * std::pow(4.0 * M_PI * uv, -0.5 * d);
    case KernelFamily::heat:
      // Gaussian semigroup: E G_a(w + U) = G_{a + u + v}(w)
      return std::pow(4.0 * M_PI * (uv + a), -0.5 * d) *
             std::exp(-w * w / (4.0 * (uv + a)));
    case KernelFamily::riesz: {
      // |x|^{-(d-a)} = Gamma((d-a)/2)^{-1} integral s^{(d-a)/2-1} e^{-s|x|^2} ds
      double lam = d - a;
      double norm = 1.0 / std::tgamma(0.5 * lam);
      return spec.constant * norm *
             log_axis_integral(0.5 * lam, [&](double s) {
               double den = 1.0 + 2.0 * sig2 * s;
               return std::pow(den, -0.5 * d) * std::exp(-s * w * w / den);
             });
    }
    case KernelFamily::bessel:
      return spec.constant *
             log_axis_integral(1.0, [&](double s) {
               double den = 1.0 + sig2 / (2.0 * s);
               return std::pow(s, 0.5 * (a - d) - 1.0) * std::exp(-s) *
                      std::pow(den, -0.5 * d) *
                      std::exp(-w * w / (4.0 * s + 2.0 * sig2));
             });
    case KernelFamily::poisson: {
      double norm = 1.0 / std::tgamma(0.5 * (d + 1.0));
      return spec.constant * norm *
             log_axis_integral(0.5 * (d + 1.0), [&](double s) {
               double den = 1.0 + 2.0 * sig2 * s;
               return std::exp(-a * a * s) * std::pow(den, -0.5 * d) *
                      std::exp(-s * w * w / den);
             });
    }
  }
  return 0;
}

IfBounds closed_form_I_f(const KernelSpec& spec, double t, double r, double s) {
  if (!(r < t) || !(s < t) || r < 0 || s < 0)
    throw std::domain_error("closed_form_I_f: requires 0 <= r,s < t");
  const double q = 2.0 * t - s - r;
  const double d = spec.d, a = spec.alpha;
  IfBounds out{};
  switch (spec.family) {
    case KernelFamily::white_noise: {
      double v = std::pow(4.0 * M_PI * q, -0.5 * d);
      out.exact = v;
      out.lower = out.upper = v;
      break;
    }
    case KernelFamily::riesz: {
      double v = pair_expectation_I(spec, q);
      out.exact = v;
      out.lower = out.upper = v;
      break;
    }
    case KernelFamily::bessel: {
      // gamma'/(2 C_d) gamma(a/2,1) q^{-d/2} <= I <= gamma' Gamma(a/2) q^{-d/2}
      double cd = std::pow(2.0, 0.5 * d - 1.0);
      double qp = std::pow(q, -0.5 * d);
      out.lower = spec.constant / (2.0 * cd) * lower_inc_gamma(0.5 * a, 1.0) * qp;
      out.upper = spec.constant * std::tgamma(0.5 * a) * qp;
      break;
    }
    case KernelFamily::heat: {
      double cd = std::pow(2.0, 0.5 * d - 1.0);
      double qp = std::pow(q, -0.5 * d);
      out.lower = spec.constant / (2.0 * cd) * qp;
      out.upper = spec.constant * std::pow(a, 0.5 * d) * qp;
      out.exact = pair_expectation_I(spec, q);
      break;
    }
    case KernelFamily::poisson: {
      // the proof's expectation E W_d^{-(d+1)/2} is infinite; these are the
      // finite analogues: lower from 2qW + a^2 <= 2q(W+1) (valid q >= a^2/2),
      // upper from I <= f(0) combined with q <= 2t
      double m = 0.5 * (d + 1.0);
      double qp = std::pow(q, -m);
      double moment = 0;  // E[(W_d + 1)^{-m}]
      {
        double norm = std::exp(-0.5 * d * std::log(2.0) - std::lgamma(0.5 * d));
        moment = norm * log_axis_integral(0.5 * d, [&](double w) {
          return std::exp(-0.5 * w) * std::pow(w + 1.0, -m);
        });
      }
      out.lower = spec.constant * std::pow(2.0, -m) * moment * qp;
      out.upper = spec.constant * std::pow(a, -(d + 1.0)) * std::pow(2.0 * t, m) * qp;
      break;
    }
  }
  return out;
}

}  // namespace fracheat
