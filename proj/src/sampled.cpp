#include "fracheat/sampled.hpp"

#include <cmath>
#include <stdexcept>

namespace fracheat {

SampledFunction::SampledFunction(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() < 2) throw std::invalid_argument("SampledFunction: need >= 2 nodes");
  if (grid_.size() != values_.size())
    throw std::invalid_argument("SampledFunction: grid/value length mismatch");
  for (std::size_t i = 1; i < grid_.size(); ++i)
    if (!(grid_[i] > grid_[i - 1]))
      throw std::invalid_argument("SampledFunction: grid must be strictly increasing");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("SampledFunction: non-finite value");
}

SampledFunction SampledFunction::constant(double value, double a, double b, int n) {
  std::vector<double> g(n), v(n, value);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  return SampledFunction(std::move(g), std::move(v));
}

SampledFunction SampledFunction::identity(double a, double b, int n) {
  std::vector<double> g(n), v(n);
  for (int i = 0; i < n; ++i) g[i] = v[i] = a + (b - a) * i / (n - 1);
  return SampledFunction(std::move(g), std::move(v));
}

double SampledFunction::operator()(double u) const {
  if (u < grid_.front() || u > grid_.back()) return 0.0;
  auto it = std::lower_bound(grid_.begin(), grid_.end(), u);
  std::size_t i = it - grid_.begin();
  if (i == 0) return values_.front();
  double u0 = grid_[i - 1], u1 = grid_[i];
  double w = (u - u0) / (u1 - u0);
  return values_[i - 1] * (1.0 - w) + values_[i] * w;
}

double SampledFunction::bv_bound() const {
  double tv = 0;
  for (std::size_t i = 1; i < values_.size(); ++i) tv += std::abs(values_[i] - values_[i - 1]);
  return std::abs(values_.front()) + std::abs(values_.back()) + tv;
}

}  // namespace fracheat
