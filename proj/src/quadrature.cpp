#include "fracheat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracheat/special.hpp"

namespace fracheat {

void QuadratureSpec::validate() const {
  if (panels_per_axis < 2) throw std::invalid_argument("QuadratureSpec: panels_per_axis >= 2");
  if (!(rel_tolerance > 0)) throw std::invalid_argument("QuadratureSpec: rel_tolerance > 0");
  if (max_refinements < 0) throw std::invalid_argument("QuadratureSpec: max_refinements >= 0");
}

namespace {

struct EngineParams {
  double sigma;
  int gauss_order;
  int grade_depth;
  int panels;
  bool exact_weight;   // Gauss-Jacobi on the panel touching the singular line
  bool use_simpson;    // independent base rule
  double simpson_tol;  // absolute, per 1-D integral
};

void push_clipped(std::vector<double>& edges, double x, double lo, double hi) {
  if (x > lo + 1e-14 * (1 + std::abs(lo)) && x < hi - 1e-14 * (1 + std::abs(hi)))
    edges.push_back(x);
}

std::vector<double> build_segments(double lo, double hi, const std::vector<double>& breaks) {
  std::vector<double> e{lo, hi};
  for (double b : breaks) push_clipped(e, b, lo, hi);
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end(),
                      [](double a, double b) { return std::abs(a - b) < 1e-15 * (1 + std::abs(a)); }),
          e.end());
  return e;
}

// Split [lo,hi] into roughly `panels` pieces per unit fraction of `total`.
void subdivide(std::vector<double>& out, double lo, double hi, int panels, double total) {
  int k = std::max(1, static_cast<int>(std::ceil(panels * (hi - lo) / total)));
  for (int i = 1; i < k; ++i) out.push_back(lo + (hi - lo) * i / k);
}

double integrate_1d(const std::function<double(double)>& f, double lo, double hi,
                    const EngineParams& ep) {
  if (ep.use_simpson) return adaptive_simpson(f, lo, hi, ep.simpson_tol);
  return gauss_panel(f, lo, hi, ep.gauss_order);
}

// inner integral over v in [vlo,vhi] of F(v+c+m, v); the first segment is
// graded dyadically from its left edge when the factor can be steep toward
// the domain corner
double inner_integral(const Smooth2D& F, double c, double m, double vlo, double vhi,
                      const std::vector<double>& v_breaks,
                      const std::vector<double>& u_breaks, bool grade_v0,
                      const EngineParams& ep) {
  if (vhi <= vlo) return 0;
  std::vector<double> breaks = v_breaks;
  for (double ub : u_breaks) breaks.push_back(ub - c - m);
  std::vector<double> segs = build_segments(vlo, vhi, breaks);

  std::vector<double> edges;
  edges.push_back(segs[0]);
  for (std::size_t s = 1; s < segs.size(); ++s) {
    double a = segs[s - 1], b = segs[s];
    if (s == 1 && grade_v0) {
      for (int k = ep.grade_depth; k >= 1; --k)
        edges.push_back(a + (b - a) * std::ldexp(1.0, -k));
    } else {
      subdivide(edges, a, b, ep.panels, vhi - vlo);
    }
    edges.push_back(b);
  }
  std::sort(edges.begin(), edges.end());

  auto g = [&](double v) { return F(v + c + m, v); };
  double sum = 0;
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i] > edges[i - 1]) sum += integrate_1d(g, edges[i - 1], edges[i], ep);
  return sum;
}

// integral over { (u,v) in [a1,b1]x[a2,b2] : u - v - c > 0 } of |u-v-c|^sigma F
double integrate_half(const Smooth2D& F, double a1, double b1, double a2, double b2,
                      double c, const std::vector<double>& u_breaks,
                      const std::vector<double>& v_breaks, bool grade_origin,
                      const EngineParams& ep) {
  double m_lo = std::max(0.0, a1 - b2 - c);
  double m_hi = b1 - a2 - c;
  if (m_hi <= m_lo) return 0;

  auto vlo_at = [&](double m) { return std::max(a2, a1 - c - m); };
  auto vhi_at = [&](double m) { return std::min(b2, b1 - c - m); };
  bool grade_v0 = grade_origin && a2 <= 0.0;

  auto inner = [&](double m) {
    return inner_integral(F, c, m, vlo_at(m), vhi_at(m), v_breaks, u_breaks, grade_v0, ep);
  };

  // kinks of the v-window, F breakpoint differences, and the parameter
  // m* = -c at which the domain corner enters the strip (the inner integral
  // has a fractional kink there)
  const double m_star = -c;
  std::vector<double> mb{a1 - c - a2, b1 - c - b2, a1 - c - b2, b1 - c - a2, m_star};
  std::vector<double> ub_all = u_breaks, vb_all = v_breaks;
  ub_all.push_back(a1);
  ub_all.push_back(b1);
  vb_all.push_back(a2);
  vb_all.push_back(b2);
  for (double ub : ub_all)
    for (double vb : vb_all) mb.push_back(ub - vb - c);
  std::vector<double> segs = build_segments(m_lo, m_hi, mb);

  const double span = m_hi - m_lo;
  auto near = [&](double x, double y) { return std::abs(x - y) <= 1e-13 * (1.0 + span); };

  double sum = 0;
  const bool weight_singular = (m_lo <= 0.0) && ep.sigma != 0.0;
  for (std::size_t s = 1; s < segs.size(); ++s) {
    double a = segs[s - 1], b = segs[s];
    if (s == 1 && weight_singular) {
      // panel touching the singular line; grade toward m=0, exact weight on
      // the innermost piece, and toward the corner kink when it forms the
      // right edge
      std::vector<double> edges{0.0};
      if (grade_origin) {
        for (int k = ep.grade_depth; k >= 1; --k) edges.push_back(b * std::ldexp(1.0, -k));
        if (near(b, m_star))
          for (int k = 1; k <= ep.grade_depth; ++k)
            edges.push_back(b - 0.5 * b * std::ldexp(1.0, -k));
      }
      edges.push_back(b);
      std::sort(edges.begin(), edges.end());
      for (std::size_t i = 1; i < edges.size(); ++i) {
        double lo = edges[i - 1], hi = edges[i];
        if (hi <= lo) continue;
        if (lo <= 0.0) {
          if (!ep.exact_weight) {
            // naive: sample the singular weight directly
            auto g = [&](double m) { return std::pow(m, ep.sigma) * inner(m); };
            sum += integrate_1d(g, lo, hi, ep);
          } else if (!ep.use_simpson) {
            GaussRule jr = gauss_jacobi_power(ep.gauss_order, ep.sigma);
            double scale = std::pow(hi, ep.sigma + 1.0);
            for (std::size_t q = 0; q < jr.nodes.size(); ++q)
              sum += scale * jr.weights[q] * inner(hi * jr.nodes[q]);
          } else {
            // substitution m = z^{1/(sigma+1)} removes the weight
            double p = 1.0 / (ep.sigma + 1.0);
            double zhi = std::pow(hi, ep.sigma + 1.0);
            auto g = [&](double z) { return inner(std::pow(z, p)); };
            sum += integrate_1d(g, 0.0, zhi, ep) / (ep.sigma + 1.0);
          }
        } else {
          auto g = [&](double m) { return std::pow(m, ep.sigma) * inner(m); };
          sum += integrate_1d(g, lo, hi, ep);
        }
      }
    } else {
      std::vector<double> edges{a};
      if (grade_origin && near(a, m_star)) {
        for (int k = ep.grade_depth; k >= 1; --k)
          edges.push_back(a + (b - a) * std::ldexp(1.0, -k));
      } else if (grade_origin && near(b, m_star)) {
        for (int k = 1; k <= ep.grade_depth; ++k)
          edges.push_back(b - (b - a) * std::ldexp(1.0, -k));
      } else {
        subdivide(edges, a, b, ep.panels, span);
      }
      edges.push_back(b);
      std::sort(edges.begin(), edges.end());
      for (std::size_t i = 1; i < edges.size(); ++i) {
        auto g = [&](double m) { return std::pow(m, ep.sigma) * inner(m); };
        if (edges[i] > edges[i - 1]) sum += integrate_1d(g, edges[i - 1], edges[i], ep);
      }
    }
  }
  return sum;
}

double compute_once(const Smooth2D& F, double sigma, const WeightedDomain& dom,
                    const EngineParams& ep) {
  // half m = u - v - shift > 0
  double plus = integrate_half(F, dom.u_lo, dom.u_hi, dom.v_lo, dom.v_hi, dom.shift,
                               dom.u_breaks, dom.v_breaks, dom.grade_origin, ep);
  // mirrored half: swap u and v, negate the shift
  Smooth2D G = [&](double u, double v) { return F(v, u); };
  double minus = integrate_half(G, dom.v_lo, dom.v_hi, dom.u_lo, dom.u_hi, -dom.shift,
                                dom.v_breaks, dom.u_breaks, dom.grade_origin, ep);
  return plus + minus;
}

}  // namespace

NormResult weighted_integral_2d(const Smooth2D& F, double sigma, const WeightedDomain& dom,
                                const QuadratureSpec& spec) {
  spec.validate();
  if (!(sigma > -1.0) || sigma > 0.0)
    throw std::domain_error("weighted_integral_2d: exponent must lie in (-1, 0]");
  if (dom.u_hi <= dom.u_lo || dom.v_hi <= dom.v_lo)
    throw std::domain_error("weighted_integral_2d: empty domain");

  EngineParams ep;
  ep.sigma = sigma;
  ep.panels = spec.panels_per_axis;
  ep.exact_weight = spec.singularity_split;
  ep.use_simpson = spec.base_rule == QuadratureSpec::BaseRule::adaptive_simpson;

  NormResult res;
  double prev = 0;
  for (int r = 0; r <= spec.max_refinements; ++r) {
    ep.gauss_order = 10 + 2 * r;
    ep.grade_depth = std::min(16 + 16 * r, 140);
    // the first pass always runs the Gauss rule so the Simpson tolerances
    // have a scale to work against
    bool simpson_now = ep.use_simpson && r > 0;
    EngineParams ep_r = ep;
    ep_r.use_simpson = simpson_now;
    ep_r.simpson_tol = spec.rel_tolerance * std::max(std::abs(prev), 1e-12) * 0.02;
    double val = compute_once(F, sigma, dom, ep_r);
    res.value = val;
    res.refinements_used = r;
    if (r > 0) {
      res.error_estimate = std::abs(val - prev);
      if (res.error_estimate <= spec.rel_tolerance * std::max(std::abs(val), 1e-300)) {
        res.converged = true;
        return res;
      }
    }
    prev = val;
  }
  res.converged = false;
  return res;
}

NormResult weighted_double_integral(const Smooth2D& F, const HurstParams& hp, double t,
                                    const QuadratureSpec& spec) {
  if (!(t > 0)) throw std::domain_error("weighted_double_integral: t must be positive");
  WeightedDomain dom;
  dom.u_hi = dom.v_hi = t;
  dom.grade_origin = true;
  NormResult res = weighted_integral_2d(F, 2.0 * hp.H - 2.0, dom, spec);
  res.value *= hp.alpha_H;
  res.error_estimate *= hp.alpha_H;
  return res;
}

}  // namespace fracheat
