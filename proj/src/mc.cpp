#include "fracheat/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracheat/special.hpp"

namespace fracheat {

void Welford::merge(const Welford& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  double nt = static_cast<double>(n_ + o.n_);
  double delta = o.mean_ - mean_;
  m2_ += o.m2_ + delta * delta * (static_cast<double>(n_) * static_cast<double>(o.n_)) / nt;
  mean_ += delta * static_cast<double>(o.n_) / nt;
  n_ += o.n_;
}

double Welford::variance() const {
  if (n_ < 2) throw std::runtime_error("Welford: variance needs n >= 2");
  return m2_ / static_cast<double>(n_ - 1);
}

MCEstimate Welford::estimate() const {
  MCEstimate e;
  e.mean = mean_;
  e.n_samples = n_;
  e.std_error = n_ >= 2 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  return e;
}

double chi2_neg_moment(int d, double p) {
  if (d < 1) throw std::domain_error("chi2_neg_moment: d >= 1");
  if (p < 0 || !(p < 0.5 * d))
    throw std::domain_error("chi2_neg_moment: requires 0 <= p < d/2");
  if (p == 0) return 1.0;
  return std::exp(-p * std::log(2.0) + std::lgamma(0.5 * d - p) - std::lgamma(0.5 * d));
}

double chi2_mgf(int d, double c) {
  if (d < 1) throw std::domain_error("chi2_mgf: d >= 1");
  if (!(c > -0.5)) throw std::domain_error("chi2_mgf: requires c > -1/2");
  return std::pow(1.0 + 2.0 * c, -0.5 * d);
}

double chi2_shifted_neg_moment(int d, double m) {
  if (d < 1 || !(m > 0)) throw std::domain_error("chi2_shifted_neg_moment: bad arguments");
  // E[(W_d + 1)^{-m}] over the chi-square density
  double norm = std::exp(-0.5 * d * std::log(2.0) - std::lgamma(0.5 * d));
  return norm * log_axis_integral(0.5 * d, [&](double w) {
    return std::exp(-0.5 * w) * std::pow(w + 1.0, -m);
  });
}

NoncentralSamples sample_noncentral(int d, std::span<const double> mu, const RngSpec& rng,
                                    std::int64_t n) {
  if (d < 1) throw std::domain_error("sample_noncentral: d >= 1");
  if (static_cast<int>(mu.size()) != d)
    throw std::invalid_argument("sample_noncentral: mu must have d components");
  if (n <= 0) throw std::domain_error("sample_noncentral: n must be positive");

  double mu_norm2 = 0;
  for (double m : mu) mu_norm2 += m * m;
  double mu_norm = std::sqrt(mu_norm2);

  NoncentralSamples out;
  out.direct.resize(n);
  out.decomposed.resize(n);
  RandomStream direct_stream(rng);
  RandomStream decomp_stream(rng.substream(1));
  for (std::int64_t i = 0; i < n; ++i) {
    double sum = 0;
    for (int k = 0; k < d; ++k) {
      double t = mu[k] + direct_stream.normal();
      sum += t * t;
    }
    out.direct[i] = sum;
    double s = mu_norm + decomp_stream.normal();
    out.decomposed[i] = decomp_stream.chi2(d - 1) + s * s;
  }
  return out;
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
  std::vector<double> xs(a.begin(), a.end()), ys(b.begin(), b.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  double na = static_cast<double>(xs.size()), nb = static_cast<double>(ys.size());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < xs.size() && j < ys.size()) {
    if (xs[i] <= ys[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

namespace {

constexpr std::int64_t kBlock = 1 << 20;  // samples per substream

// Partitioned single-pass accumulation; deterministic in (seed, n) and
// independent of any execution order since substreams merge in index order.
template <typename SampleFn>
MCEstimate partitioned_mc(const RngSpec& rng, std::int64_t n, SampleFn&& sample) {
  Welford total;
  std::int64_t done = 0;
  std::uint32_t block_index = 0;
  while (done < n) {
    std::int64_t count = std::min(kBlock, n - done);
    RandomStream stream(rng.substream(block_index));
    Welford w;
    for (std::int64_t i = 0; i < count; ++i) w.add(sample(stream));
    total.merge(w);
    done += count;
    ++block_index;
  }
  return total.estimate();
}

}  // namespace

MCEstimate mc_I_f(const KernelSpec& spec, double t, double r, double s, const RngSpec& rng,
                  std::int64_t n) {
  if (n <= 0) throw std::domain_error("mc_I_f: n must be positive");
  if (!(r < t) || !(s < t)) throw std::domain_error("mc_I_f: requires r < t and s < t");
  if (spec.family == KernelFamily::white_noise)
    throw std::domain_error("mc_I_f: white noise has no pointwise kernel");
  const double q = 2.0 * t - s - r;
  const int d = spec.d;
  MCEstimate est = partitioned_mc(rng, n, [&](RandomStream& stream) {
    double radius = std::sqrt(2.0 * q * stream.chi2(d));
    return kernel_eval_radial(spec, radius);
  });
  // |U|^{-(d-alpha)} has infinite variance once d - alpha >= d/2; the sample
  // standard error is then only an empirical indication
  if (spec.family == KernelFamily::riesz && (d - spec.alpha) >= 0.5 * d)
    est.variance_reliable = false;
  if (spec.family == KernelFamily::bessel && spec.alpha < d && (d - spec.alpha) >= 0.5 * d)
    est.variance_reliable = false;
  return est;
}

MCEstimate mc_J_f(const KernelSpec& spec, double u, double v, std::span<const double> y,
                  std::span<const double> z, const RngSpec& rng, std::int64_t n) {
  if (n <= 0) throw std::domain_error("mc_J_f: n must be positive");
  if (!(u > 0) || !(v > 0)) throw std::domain_error("mc_J_f: requires u,v > 0");
  if (spec.family == KernelFamily::white_noise)
    throw std::domain_error("mc_J_f: white noise has no pointwise kernel");
  if (y.size() != z.size() || static_cast<int>(y.size()) != spec.d)
    throw std::invalid_argument("mc_J_f: dimension mismatch");
  const int d = spec.d;
  const double sd = std::sqrt(2.0 * (u + v));
  std::vector<double> w(d);
  for (int k = 0; k < d; ++k) w[k] = y[k] - z[k];
  MCEstimate est = partitioned_mc(rng, n, [&](RandomStream& stream) {
    double r2 = 0;
    for (int k = 0; k < d; ++k) {
      double c = w[k] + sd * stream.normal();
      r2 += c * c;
    }
    return kernel_eval_radial(spec, std::sqrt(r2));
  });
  if (spec.family == KernelFamily::riesz && (d - spec.alpha) >= 0.5 * d)
    est.variance_reliable = false;
  return est;
}

}  // namespace fracheat
