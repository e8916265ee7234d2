#include "fracheat/field.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "fracheat/errors.hpp"
#include "fracheat/fractional.hpp"
#include "fracheat/special.hpp"

namespace fracheat {

SpaceTimePoint SpaceTimeGrid::point(std::size_t k) const {
  std::size_t ns = sites.size();
  return SpaceTimePoint{times[k / ns], sites[k % ns]};
}

void SpaceTimeGrid::validate() const {
  if (times.empty() || sites.empty()) throw std::invalid_argument("grid: empty axis");
  double prev = 0;
  for (double t : times) {
    if (!(t > prev)) throw std::invalid_argument("grid: times must be increasing and positive");
    prev = t;
  }
  for (const auto& s : sites)
    if (static_cast<int>(s.size()) != d) throw std::invalid_argument("grid: site dimension mismatch");
  for (std::size_t i = 0; i < sites.size(); ++i)
    for (std::size_t j = i + 1; j < sites.size(); ++j)
      if (sites[i] == sites[j]) throw std::invalid_argument("grid: duplicate site");
}

CovarianceMatrix assemble_covariance(const SpaceTimeGrid& grid, const KernelSpec& spec,
                                     const HurstParams& hp, const QuadratureSpec& quad,
                                     int threads) {
  grid.validate();
  ExistenceResult ex = existence_check(spec, hp.H);
  if (!ex.admissible)
    throw threshold_error("assemble_covariance: inadmissible (H, kernel) pair",
                          ex.threshold_raw);
  const std::size_t n = grid.size();
  CovarianceMatrix cov;
  cov.entries.resize(n, n);

  struct Entry {
    std::size_t i, j;
  };
  std::vector<Entry> work;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) work.push_back({i, j});

  unsigned hw = std::thread::hardware_concurrency();
  unsigned nw = threads > 0 ? static_cast<unsigned>(threads) : (hw ? hw : 1u);
  nw = std::min<unsigned>(nw, 16);

  std::vector<NormResult> results(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= work.size()) break;
      results[k] = covariance_solution(spec, hp, grid.point(work[k].i),
                                       grid.point(work[k].j), quad);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < nw; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t k = 0; k < work.size(); ++k) {
    const auto& r = results[k];
    cov.entries(work[k].i, work[k].j) = r.value;
    cov.entries(work[k].j, work[k].i) = r.value;
    cov.max_entry_error = std::max(cov.max_entry_error, r.error_estimate);
    cov.all_converged = cov.all_converged && r.converged;
  }
  return cov;
}

std::vector<double> default_jitter_schedule(const CovarianceMatrix& cov) {
  double mean_diag = cov.entries.diagonal().mean();
  return {0.0, 1e-12 * mean_diag, 1e-10 * mean_diag, 1e-8 * mean_diag};
}

CholeskyFactor factor_with_jitter(const CovarianceMatrix& cov,
                                  std::span<const double> jitter_schedule) {
  const auto& m = cov.entries;
  if (m.rows() != m.cols()) throw std::invalid_argument("factor_with_jitter: square matrix required");
  if (!m.isApprox(m.transpose(), 1e-12))
    throw std::invalid_argument("factor_with_jitter: matrix must be symmetric");
  for (double j : jitter_schedule) {
    Eigen::MatrixXd shifted = m;
    shifted.diagonal().array() += j;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() == Eigen::Success) return {Eigen::MatrixXd(llt.matrixL()), j};
  }
  throw not_psd_error("factor_with_jitter: not positive definite for any scheduled jitter");
}

std::vector<FieldSample> sample_field(const CholeskyFactor& factor, std::int64_t n,
                                      const RngSpec& rng) {
  if (n <= 0) throw std::domain_error("sample_field: n must be positive");
  const Eigen::Index dim = factor.L.rows();
  std::vector<FieldSample> out;
  out.reserve(n);
  for (std::int64_t i = 0; i < n; ++i) {
    RngSpec draw_spec = rng.substream(static_cast<std::uint32_t>(i));
    RandomStream stream(draw_spec);
    Eigen::VectorXd z(dim);
    for (Eigen::Index k = 0; k < dim; ++k) z(k) = stream.normal();
    out.push_back({factor.L * z, draw_spec});
  }
  return out;
}

namespace {

// per-axis overlap length of A1_i and (A2_i + w); piecewise linear in w
double tent(double a1, double b1, double a2, double b2, double w) {
  return std::max(0.0, std::min(b1, b2 + w) - std::max(a1, a2 + w));
}

// second antiderivative trick in one dimension:
// int_{A1} int_{A2} phi(x - y) dy dx
//   = Phi(b1-a2) + Phi(a1-b2) - Phi(a1-a2) - Phi(b1-b2),  Phi'' = phi
double by_antiderivative(double a1, double b1, double a2, double b2,
                         const std::function<double(double)>& Phi) {
  return Phi(b1 - a2) + Phi(a1 - b2) - Phi(a1 - a2) - Phi(b1 - b2);
}

double spatial_pair_white(const Rectangle& A1, const Rectangle& A2) {
  double vol = 1;
  for (std::size_t i = 0; i < A1.lo.size(); ++i)
    vol *= tent(A1.lo[i], A1.hi[i], A2.lo[i], A2.hi[i], 0.0);
  return vol;
}

double spatial_pair_heat(const KernelSpec& spec, const Rectangle& A1, const Rectangle& A2) {
  const double c = 4.0 * spec.alpha;
  double prod = spec.constant;
  for (std::size_t i = 0; i < A1.lo.size(); ++i) {
    auto Phi = [&](double w) {
      return w * 0.5 * std::sqrt(M_PI * c) * std::erf(w / std::sqrt(c)) +
             0.5 * c * (std::exp(-w * w / c) - 1.0);
    };
    prod *= by_antiderivative(A1.lo[i], A1.hi[i], A2.lo[i], A2.hi[i], Phi);
  }
  return prod;
}

double spatial_pair_riesz_1d(const KernelSpec& spec, const Rectangle& A1,
                             const Rectangle& A2) {
  const double s = spec.alpha - 1.0;  // |w|^{alpha-1} weight in d = 1
  auto Phi = [&](double w) {
    return std::pow(std::abs(w), s + 2.0) / ((s + 1.0) * (s + 2.0));
  };
  return spec.constant * by_antiderivative(A1.lo[0], A1.hi[0], A2.lo[0], A2.hi[0], Phi);
}

// generic tensor quadrature over the difference variable with the tent weight
double spatial_pair_generic(const KernelSpec& spec, const Rectangle& A1,
                            const Rectangle& A2, int order) {
  const int d = spec.d;
  if (d > 3) throw std::domain_error("noise_covariance_rectangles: d <= 3 for this family");
  // per-axis panel edges: tent breakpoints plus grading toward w_i = 0
  std::vector<std::vector<double>> edges(d);
  for (int i = 0; i < d; ++i) {
    double lo = A1.lo[i] - A2.hi[i], hi = A1.hi[i] - A2.lo[i];
    std::vector<double> e{lo, hi};
    for (double b : {A1.lo[i] - A2.lo[i], A1.hi[i] - A2.hi[i], 0.0})
      if (b > lo + 1e-14 && b < hi - 1e-14) e.push_back(b);
    std::sort(e.begin(), e.end());
    // geometric grading toward 0 when 0 is inside (kernel may be singular)
    std::vector<double> fine;
    for (std::size_t k = 0; k + 1 < e.size(); ++k) {
      fine.push_back(e[k]);
      double a = e[k], b = e[k + 1];
      if (a == 0.0)
        for (int g = 24; g >= 1; --g) fine.push_back(b * std::ldexp(1.0, -g));
      else if (b == 0.0)
        for (int g = 1; g <= 24; ++g) fine.push_back(a * std::ldexp(1.0, -g));
      else {
        int sub = 4;
        for (int j = 1; j < sub; ++j) fine.push_back(a + (b - a) * j / sub);
      }
    }
    fine.push_back(e.back());
    std::sort(fine.begin(), fine.end());
    edges[i] = std::move(fine);
  }
  const GaussRule& rule = gauss_legendre(order);
  std::vector<double> w(d);
  std::function<double(int)> recurse = [&](int axis) -> double {
    if (axis == d) {
      double r2 = 0;
      for (double wi : w) r2 += wi * wi;
      double val = kernel_eval_radial(spec, std::sqrt(r2));
      if (!std::isfinite(val)) return 0.0;  // measure-zero singular point
      double weight = 1;
      for (int i = 0; i < d; ++i)
        weight *= tent(A1.lo[i], A1.hi[i], A2.lo[i], A2.hi[i], w[i]);
      return val * weight;
    }
    double sum = 0;
    for (std::size_t k = 0; k + 1 < edges[axis].size(); ++k) {
      double a = edges[axis][k], b = edges[axis][k + 1];
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        w[axis] = a + (b - a) * rule.nodes[q];
        sum += (b - a) * rule.weights[q] * recurse(axis + 1);
      }
    }
    return sum;
  };
  return recurse(0);
}

}  // namespace

double noise_covariance_rectangles(const HurstParams& hp, const KernelSpec& spec, double t1,
                                   const Rectangle& A1, double t2, const Rectangle& A2,
                                   const QuadratureSpec& quad) {
  if (A1.lo.size() != A1.hi.size() || A2.lo.size() != A2.hi.size() ||
      static_cast<int>(A1.lo.size()) != spec.d || A1.lo.size() != A2.lo.size())
    throw std::invalid_argument("noise_covariance_rectangles: dimension mismatch");
  for (std::size_t i = 0; i < A1.lo.size(); ++i)
    if (!std::isfinite(A1.lo[i]) || !std::isfinite(A1.hi[i]) || !std::isfinite(A2.lo[i]) ||
        !std::isfinite(A2.hi[i]) || !(A1.hi[i] > A1.lo[i]) || !(A2.hi[i] > A2.lo[i]))
      throw std::domain_error("noise_covariance_rectangles: rectangles must be bounded");
  if (t1 < 0 || t2 < 0) throw std::domain_error("noise_covariance_rectangles: negative time");

  double temporal = fbm_covariance(hp, t1, t2);
  if (temporal == 0) return 0.0;

  double spatial;
  switch (spec.family) {
    case KernelFamily::white_noise:
      spatial = spatial_pair_white(A1, A2);
      break;
    case KernelFamily::heat:
      spatial = spatial_pair_heat(spec, A1, A2);
      break;
    case KernelFamily::riesz:
      spatial = spec.d == 1 ? spatial_pair_riesz_1d(spec, A1, A2)
                            : spatial_pair_generic(spec, A1, A2, 12);
      break;
    default:
      spatial = spatial_pair_generic(spec, A1, A2, 12);
      break;
  }
  (void)quad;
  return temporal * spatial;
}

}  // namespace fracheat
