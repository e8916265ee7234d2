#include "fracheat/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracheat/special.hpp"

namespace fracheat {

double fbm_covariance(const HurstParams& hp, double t, double s) {
  if (t < 0 || s < 0) throw std::domain_error("fbm_covariance: negative time");
  double twoH = 2.0 * hp.H;
  return 0.5 * (std::pow(t, twoH) + std::pow(s, twoH) - std::pow(std::abs(t - s), twoH));
}

ValueWithError kernel_K_H(const HurstParams& hp, double t, double s,
                          KernelQuadMethod method) {
  if (!(s > 0) || !(s < t)) throw std::domain_error("kernel_K_H: requires 0 < s < t");
  const double H = hp.H;
  const double nu = H - 0.5;  // in (0, 1/2)
  // integral_s^t (u-s)^{H-3/2} u^{H-1/2} du, u = s + z^{1/nu}:
  //   = (1/nu) integral_0^{(t-s)^nu} (s + z^{1/nu})^{H-1/2} dz
  const double zmax = std::pow(t - s, nu);
  auto g = [&](double z) { return std::pow(s + std::pow(z, 1.0 / nu), nu); };

  double v1, v2;
  if (method == KernelQuadMethod::substituted_gauss) {
    // panels graded toward z=0 where the map has limited smoothness
    auto run = [&](int order, int depth) {
      double sum = 0, prev_edge = 0;
      for (int k = depth; k >= 0; --k) {
        double edge = zmax * std::ldexp(1.0, -k);
        sum += gauss_panel(g, prev_edge, edge, order);
        prev_edge = edge;
      }
      return sum;
    };
    v1 = run(16, 24);
    v2 = run(24, 32);
  } else {
    v1 = adaptive_simpson(g, 0.0, zmax, 1e-11 * std::max(1.0, zmax));
    v2 = adaptive_simpson(g, 0.0, zmax, 1e-13 * std::max(1.0, zmax));
  }
  double integral = v2 / nu;
  double value = hp.c_star_H * std::pow(s, 0.5 - H) * integral;
  double err = hp.c_star_H * std::pow(s, 0.5 - H) * std::abs(v2 - v1) / nu;
  return {value, err};
}

double fractional_integral_right(const SampledFunction& f, double alpha, double t) {
  if (!(alpha > 0) || !(alpha < 1))
    throw std::domain_error("fractional_integral_right: alpha must lie in (0,1)");
  const double T = f.back();
  if (t >= T) return 0.0;
  if (t < f.front())
    throw std::domain_error("fractional_integral_right: t below the grid span");

  const auto& grid = f.grid();
  const auto& vals = f.values();
  double sum = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double u0 = grid[i], u1 = grid[i + 1];
    if (u1 <= t) continue;
    double lo = std::max(u0, t), hi = u1;
    double slope = (vals[i + 1] - vals[i]) / (u1 - u0);
    double f_at_t = vals[i] + slope * (t - u0);  // line extended to u = t
    // integral_lo^hi (u-t)^{alpha-1} [f(t) + slope (u-t)] du, exact
    double a1 = std::pow(hi - t, alpha) - std::pow(lo - t, alpha);
    double a2 = std::pow(hi - t, alpha + 1.0) - std::pow(lo - t, alpha + 1.0);
    sum += f_at_t * a1 / alpha + slope * a2 / (alpha + 1.0);
  }
  return sum / std::tgamma(alpha);
}

double transfer_operator(const SampledFunction& phi, const HurstParams& hp, double s) {
  if (!(s > 0)) throw std::domain_error("transfer_operator: requires s > 0");
  const double T = phi.back();
  if (s >= T) return 0.0;
  const double nu = hp.H - 0.5;

  // c* s^{-nu} integral_s^T (u-s)^{nu-1} u^nu phi(u) du with the substitution
  // z = (u-s)^nu, which turns the weight into Lebesgue measure:
  //   = c* s^{-nu} (1/nu) integral_0^{(T-s)^nu} (s + z^{1/nu})^nu phi(s + z^{1/nu}) dz
  auto g = [&](double z) {
    double u = s + std::pow(z, 1.0 / nu);
    return std::pow(u, nu) * phi(u);
  };
  // panels aligned with the sampling grid, first panel split dyadically
  std::vector<double> z_edges{0.0};
  for (double node : phi.grid())
    if (node > s && node < T) z_edges.push_back(std::pow(node - s, nu));
  z_edges.push_back(std::pow(T - s, nu));
  std::sort(z_edges.begin(), z_edges.end());

  double total = 0;
  for (std::size_t i = 1; i < z_edges.size(); ++i) {
    double lo = z_edges[i - 1], hi = z_edges[i];
    if (hi <= lo) continue;
    if (lo == 0.0) {
      double a = hi * std::ldexp(1.0, -40);
      total += gauss_panel(g, 0.0, a, 8);
      for (int k = 39; k >= 0; --k) {
        double e = hi * std::ldexp(1.0, -k);
        total += gauss_panel(g, a, e, 20);
        a = e;
      }
    } else {
      total += gauss_panel(g, lo, hi, 20);
    }
  }
  return hp.c_star_H * std::pow(s, -nu) * total / nu;
}

std::complex<double> restricted_fourier(const SampledFunction& phi, double a, double b,
                                        double tau) {
  if (!(b > a)) throw std::domain_error("restricted_fourier: requires a < b");
  if (a < phi.front() - 1e-12 || b > phi.back() + 1e-12)
    throw std::domain_error("restricted_fourier: [a,b] outside the grid span");
  using cplx = std::complex<double>;
  const cplx I(0.0, 1.0);
  const auto& grid = phi.grid();
  const auto& vals = phi.values();
  cplx total = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double lo = std::max(grid[i], a), hi = std::min(grid[i + 1], b);
    if (hi <= lo) continue;
    double slope = (vals[i + 1] - vals[i]) / (grid[i + 1] - grid[i]);
    double c0 = vals[i] + slope * (lo - grid[i]);  // value at lo
    // integral_lo^hi e^{-i tau t} (c0 + slope (t-lo)) dt
    double len = hi - lo;
    if (std::abs(tau) * len < 1e-4) {
      // short series in tau to avoid cancellation
      cplx phase = std::exp(-I * tau * lo);
      double m0 = c0 * len + 0.5 * slope * len * len;
      double m1 = 0.5 * c0 * len * len + slope * len * len * len / 3.0;
      double m2 = c0 * len * len * len / 3.0 + 0.25 * slope * len * len * len * len;
      total += phase * (m0 - I * tau * m1 - 0.5 * tau * tau * m2);
    } else {
      cplx itau = I * tau;
      auto anti = [&](double x) {
        double fx = c0 + slope * (x - lo);
        return std::exp(-itau * x) * (fx / (-itau) - slope / (tau * tau));
      };
      total += anti(hi) - anti(lo);
    }
  }
  return total;
}

PairingResult lemma_A1_pairing(const SampledFunction& phi, const SampledFunction& psi,
                               double a, double b, double alpha, double rel_tol) {
  if (!(alpha > 0) || !(alpha < 1))
    throw std::domain_error("lemma_A1_pairing: alpha must lie in (0,1)");
  if (!(b > a)) throw std::domain_error("lemma_A1_pairing: requires a < b");

  // lhs: double integral with the |u-v|^{alpha-1} weight; panels aligned to
  // the sampling grids so the smooth factor is polynomial per cell
  WeightedDomain dom;
  dom.u_lo = dom.v_lo = a;
  dom.u_hi = dom.v_hi = b;
  for (double gnode : phi.grid()) dom.u_breaks.push_back(gnode);
  for (double gnode : psi.grid()) dom.v_breaks.push_back(gnode);
  QuadratureSpec qspec;
  qspec.rel_tolerance = std::min(rel_tol * 0.1, 1e-8);
  qspec.max_refinements = 4;
  Smooth2D F = [&](double u, double v) { return phi(u) * psi(v); };
  NormResult lhs = weighted_integral_2d(F, alpha - 1.0, dom, qspec);

  // rhs: q_alpha integral |tau|^{-alpha} F phi conj(F psi)
  const double q = q_alpha(alpha);
  auto spectral = [&](double tau) {
    auto fp = restricted_fourier(phi, a, b, tau);
    auto fq = restricted_fourier(psi, a, b, tau);
    return fp.real() * fq.real() + fp.imag() * fq.imag();  // Re(fp conj(fq))
  };

  // scale for relative targets
  double scale = std::max(std::abs(lhs.value), 1e-12);

  // tail bound: |F phi| <= B_phi / |tau| for BV data, so the tail beyond
  // tau_max is below 2 q B_phi B_psi / ((1+alpha) tau_max^{1+alpha})
  double bb = phi.bv_bound() * psi.bv_bound();
  double tail_target = 0.1 * rel_tol * scale;
  double tau_max = std::pow(2.0 * q * bb / ((1.0 + alpha) * tail_target), 1.0 / (1.0 + alpha));
  tau_max = std::max(tau_max, 20.0);

  // |tau| <= 1: substitute tau = z^{1/(1-alpha)} to absorb the |tau|^{-alpha}
  // singularity (two symmetric sides combined since the integrand is even)
  double p = 1.0 / (1.0 - alpha);
  auto low = [&](double z) { return spectral(std::pow(z, p)); };
  double low_part = 2.0 * gauss_panel(low, 0.0, 1.0, 40) * p;
  // note: integral_0^1 tau^{-alpha} h(tau) dtau = p integral_0^1 h(z^p) dz

  // 1 <= |tau| <= tau_max: Gauss panels per half-period pi
  double high_part = 0;
  auto high = [&](double tau) { return std::pow(tau, -alpha) * spectral(tau); };
  double step = M_PI;
  for (double lo = 1.0; lo < tau_max; lo += step) {
    double hi = std::min(lo + step, tau_max);
    high_part += gauss_panel(high, lo, hi, 12);
  }
  high_part *= 2.0;

  double tail_bound = q * 2.0 * bb / ((1.0 + alpha) * std::pow(tau_max, 1.0 + alpha));
  double rhs = q * (low_part + high_part);

  PairingResult res;
  res.lhs = lhs.value;
  res.rhs = rhs;
  res.tail_bound = tail_bound;
  res.converged = lhs.converged && tail_bound <= 0.2 * rel_tol * scale;
  return res;
}

}  // namespace fracheat
