#pragma once

#include <stdexcept>
#include <string>

namespace fracheat {

// Existence condition H > (d - alpha_f)/4 violated.
class threshold_error : public std::domain_error {
 public:
  threshold_error(std::string what, double threshold)
      : std::domain_error(std::move(what)), threshold_(threshold) {}
  double threshold() const { return threshold_; }

 private:
  double threshold_;
};

// A covariance matrix could not be factored even with the largest jitter.
class not_psd_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracheat
