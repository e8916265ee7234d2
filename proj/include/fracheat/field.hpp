#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fracheat/norms.hpp"
#include "fracheat/rng.hpp"

namespace fracheat {

/// Discretization of the solution index set: every (time, site) pair is one
/// grid point, ordered time-major (point k = times[k / sites.size()],
/// sites[k % sites.size()]).
struct SpaceTimeGrid {
  std::vector<double> times;              // strictly increasing, positive
  std::vector<std::vector<double>> sites; // distinct points in R^d
  int d;

  std::size_t size() const { return times.size() * sites.size(); }
  SpaceTimePoint point(std::size_t k) const;
  void validate() const;
};

struct CovarianceMatrix {
  Eigen::MatrixXd entries;
  double jitter_applied = 0;
  double max_entry_error = 0;
  bool all_converged = true;
};

struct FieldSample {
  Eigen::VectorXd values;
  RngSpec provenance;
};

// Pairwise covariance_solution over the grid; entries computed in parallel,
// result independent of the worker count.
CovarianceMatrix assemble_covariance(const SpaceTimeGrid& grid, const KernelSpec& spec,
                                     const HurstParams& hp, const QuadratureSpec& quad,
                                     int threads = 0);

struct CholeskyFactor {
  Eigen::MatrixXd L;
  double jitter_applied;
};

// Cholesky of entries + jitter*I for the smallest jitter in the schedule
// that succeeds; throws not_psd_error if none does.
CholeskyFactor factor_with_jitter(const CovarianceMatrix& cov,
                                  std::span<const double> jitter_schedule);

// Default schedule {0, 1e-12, 1e-10, 1e-8} scaled by the mean diagonal.
std::vector<double> default_jitter_schedule(const CovarianceMatrix& cov);

// n independent draws factor.L * z, z standard normal; draw i uses
// substream(i) of rng.
std::vector<FieldSample> sample_field(const CholeskyFactor& factor, std::int64_t n,
                                      const RngSpec& rng);

struct Rectangle {
  std::vector<double> lo;
  std::vector<double> hi;
};

// Covariance of the driving noise on rectangles:
//   R_H(t1,t2) * integral_{A1} integral_{A2} f(x-y) dy dx
// (Lebesgue overlap for white noise).
double noise_covariance_rectangles(const HurstParams& hp, const KernelSpec& spec,
                                   double t1, const Rectangle& A1, double t2,
                                   const Rectangle& A2, const QuadratureSpec& quad);

}  // namespace fracheat
