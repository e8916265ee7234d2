#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fracheat/kernels.hpp"
#include "fracheat/rng.hpp"

namespace fracheat {

/// Monte Carlo mean with its standard error.  variance_reliable is cleared
/// for estimands with (near-)infinite second moment, where the reported
/// standard error converges slowly; the mean itself stays consistent.
struct MCEstimate {
  double mean = 0;
  double std_error = 0;
  std::int64_t n_samples = 0;
  bool variance_reliable = true;
};

/// Single-pass mean/variance accumulator (Welford), mergeable so that
/// partitioned streams combine deterministically.
class Welford {
 public:
  void add(double x) {
    ++n_;
    double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  void merge(const Welford& o);
  std::int64_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;  // sample variance, n-1
  MCEstimate estimate() const;

 private:
  std::int64_t n_ = 0;
  double mean_ = 0;
  double m2_ = 0;
};

// E[W_d^{-p}] = 2^{-p} Gamma(d/2 - p) / Gamma(d/2), requires 0 <= p < d/2.
double chi2_neg_moment(int d, double p);

// E[e^{-c W_d}] = (1 + 2c)^{-d/2}, requires c > -1/2.
double chi2_mgf(int d, double c);

// E[(W_d + 1)^{-m}] by quadrature over the chi-square density (m > 0).
double chi2_shifted_neg_moment(int d, double m);

struct NoncentralSamples {
  std::vector<double> direct;      // sum (mu_i + V_i)^2
  std::vector<double> decomposed;  // W_{d-1} + S^2, S ~ N(|mu|, 1)
};

// n draws from each representation of the noncentral chi-square with d
// degrees of freedom and noncentrality |mu|^2.
NoncentralSamples sample_noncentral(int d, std::span<const double> mu,
                                    const RngSpec& rng, std::int64_t n);

// Two-sample Kolmogorov-Smirnov distance (sorts copies of the inputs).
double ks_distance(std::span<const double> a, std::span<const double> b);

// MC estimate of I_f(r,s) = E[f(U)], |U|^2 = 2(2t-s-r) W_d.
MCEstimate mc_I_f(const KernelSpec& spec, double t, double r, double s,
                  const RngSpec& rng, std::int64_t n);

// MC estimate of J_f(u,v,y,z) = E[f(y-z+U)], U ~ N(0, 2(u+v) I_d).
MCEstimate mc_J_f(const KernelSpec& spec, double u, double v,
                  std::span<const double> y, std::span<const double> z,
                  const RngSpec& rng, std::int64_t n);

}  // namespace fracheat
