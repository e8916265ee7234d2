#pragma once

#include <vector>

namespace fracheat {

/// A real function known at the nodes of a strictly increasing grid and
/// interpreted as piecewise linear in between.  Outside the grid span the
/// function is treated as zero.
class SampledFunction {
 public:
  SampledFunction(std::vector<double> grid, std::vector<double> values);

  static SampledFunction constant(double value, double a, double b, int n = 2);
  // f(u) = u on [a,b].
  static SampledFunction identity(double a, double b, int n = 2);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double front() const { return grid_.front(); }
  double back() const { return grid_.back(); }

  double operator()(double u) const;  // piecewise-linear, 0 outside span

  // Total-variation style bound used for Fourier tail estimates:
  // |f(a)| + |f(b)| + integral of |f'|.
  double bv_bound() const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
};

}  // namespace fracheat
