#include "fracheat/special.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fracheat {

double gamma_ratio(double a, double b) {
  return std::exp(std::lgamma(a) - std::lgamma(b));
}

double lower_inc_gamma(double a, double x) {
  if (a <= 0) throw std::domain_error("lower_inc_gamma: a must be positive");
  if (x < 0) throw std::domain_error("lower_inc_gamma: x must be nonnegative");
  if (x == 0) return 0;
  // gamma(a,x) = x^a e^{-x} sum_{n>=0} x^n / (a (a+1) ... (a+n))
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 500; ++n) {
    term *= x / (a + n);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::pow(x, a) * std::exp(-x) * sum;
}

namespace {

// Golub-Welsch for the Jacobi weight (1+x)^sigma on [-1,1] (a=0, b=sigma),
// then mapped to integral_0^1 x^sigma f(x) dx.  sigma = 0 gives Gauss-Legendre.
GaussRule jacobi_rule_impl(int n, double sigma) {
  if (n < 1) throw std::invalid_argument("gauss rule order must be >= 1");
  if (sigma <= -1) throw std::domain_error("jacobi weight exponent must exceed -1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  const double b = sigma;
  for (int k = 0; k < n; ++k) {
    double diag;
    if (k == 0) {
      diag = b / (b + 2.0);
    } else {
      double m = 2.0 * k + b;
      diag = b * b / (m * (m + 2.0));
    }
    J(k, k) = diag;
    if (k + 1 < n) {
      double kk = k + 1.0;
      double m = 2.0 * kk + b;
      double beta = 4.0 * kk * kk * (kk + b) * (kk + b) /
                    (m * m * (m + 1.0) * (m - 1.0));
      double off = std::sqrt(beta);
      J(k, k + 1) = off;
      J(k + 1, k) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::pow(2.0, sigma + 1.0) / (sigma + 1.0);
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()(i);
    double w = mu0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
    rule.nodes[i] = 0.5 * (x + 1.0);
    // map [-1,1] -> [0,1] absorbing the 2^{sigma+1} from (1+x)^sigma = (2s)^sigma
    rule.weights[i] = w * std::pow(2.0, -(sigma + 1.0));
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, jacobi_rule_impl(n, 0.0)).first;
  return it->second;
}

GaussRule gauss_jacobi_power(int n, double sigma) { return jacobi_rule_impl(n, sigma); }

double gauss_panel(const std::function<double(double)>& f, double lo, double hi, int order) {
  const GaussRule& rule = gauss_legendre(order);
  const double h = hi - lo;
  double sum = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(lo + h * rule.nodes[i]);
  return sum * h;
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double abs_tol, int max_depth) {
  if (hi <= lo) return 0;
  double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
  double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, lo, hi, fa, fm, fb, whole, abs_tol, max_depth);
}

double log_axis_integral(double a, const std::function<double(double)>& g, double rel_tol) {
  if (a <= 0) throw std::domain_error("log_axis_integral: power must be positive");
  auto integrand = [&](double x) {
    double s = std::exp(x);
    double v = g(s);
    return v == 0 ? 0.0 : std::exp(a * x) * v;
  };
  // locate the peak on a coarse scan, then expand until negligible
  double x_peak = 0, f_peak = integrand(0);
  for (double x = -40; x <= 40; x += 0.5) {
    double v = integrand(x);
    if (v > f_peak) {
      f_peak = v;
      x_peak = x;
    }
  }
  if (f_peak <= 0) return 0;
  const double cutoff = f_peak * 1e-18;
  double x_lo = x_peak, x_hi = x_peak;
  while (integrand(x_lo) > cutoff && x_lo > x_peak - 700) x_lo -= 1.0;
  while (integrand(x_hi) > cutoff && x_hi < x_peak + 700) x_hi += 1.0;

  // trapezoid on the exponential substitution, halving until stable
  double h = 0.5;
  auto trap = [&](double step) {
    double sum = 0;
    for (double x = x_lo; x <= x_hi + 1e-12; x += step) sum += integrand(x);
    return sum * step;
  };
  double prev = trap(h);
  for (int it = 0; it < 12; ++it) {
    h *= 0.5;
    double cur = trap(h);
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

ChebCache::ChebCache(const std::function<double(double)>& f, double lo, double hi,
                     int degree, int panels)
    : lo_(lo), hi_(hi) {
  if (!(hi > lo) || degree < 2 || panels < 1)
    throw std::invalid_argument("ChebCache: bad construction parameters");
  coeffs_.resize(panels);
  const int n = degree + 1;
  const double pw = (hi - lo) / panels;
  std::vector<double> vals(n);
  for (int p = 0; p < panels; ++p) {
    double a = lo + p * pw, b = a + pw;
    for (int k = 0; k < n; ++k) {
      double theta = M_PI * (k + 0.5) / n;
      double x = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(theta);
      vals[k] = f(x);
    }
    coeffs_[p].assign(n, 0.0);
    for (int j = 0; j < n; ++j) {
      double c = 0;
      for (int k = 0; k < n; ++k) c += vals[k] * std::cos(M_PI * j * (k + 0.5) / n);
      coeffs_[p][j] = 2.0 * c / n;
    }
  }
}

double ChebCache::operator()(double x) const {
  const int panels = static_cast<int>(coeffs_.size());
  const double pw = (hi_ - lo_) / panels;
  int p = static_cast<int>((x - lo_) / pw);
  if (p < 0) p = 0;
  if (p >= panels) p = panels - 1;
  double a = lo_ + p * pw, b = a + pw;
  double u = (2.0 * x - a - b) / (b - a);
  // Clenshaw
  const auto& c = coeffs_[p];
  double b1 = 0, b2 = 0;
  for (int j = static_cast<int>(c.size()) - 1; j >= 1; --j) {
    double tmp = 2.0 * u * b1 - b2 + c[j];
    b2 = b1;
    b1 = tmp;
  }
  return u * b1 - b2 + 0.5 * c[0];
}

}  // namespace fracheat
