#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "fracheat/fractional.hpp"
#include "fracheat/kernels.hpp"
#include "helpers.hpp"

using namespace fracheat;
using testutil::graded_integral;
using testutil::rel_err;

TEST_CASE("hurst constants") {
  SUBCASE("alpha_H is the direct product") {
    CHECK(derive_hurst_params(0.75).alpha_H == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(derive_hurst_params(0.5 + 1e-9).alpha_H == doctest::Approx(1e-9).epsilon(1e-6));
  }
  SUBCASE("gamma-formula values at H = 0.7") {
    // reference values from a 40-digit special-function evaluation
    HurstParams hp = derive_hurst_params(0.7);
    CHECK(rel_err(hp.c_H, 0.571216247620264) < 1e-12);
    CHECK(rel_err(hp.c_star_H, 0.21836182617678252) < 1e-12);
    CHECK(hp.c_H > 0);
    CHECK(hp.c_star_H > 0);
  }
  SUBCASE("domain errors outside (1/2, 1)") {
    CHECK_THROWS_AS(derive_hurst_params(0.5), std::domain_error);
    CHECK_THROWS_AS(derive_hurst_params(1.0), std::domain_error);
    CHECK_THROWS_AS(derive_hurst_params(0.3), std::domain_error);
  }
  SUBCASE("c_H equals q_{2H-1}") {
    for (double H : {0.6, 0.75, 0.9})
      CHECK(rel_err(derive_hurst_params(H).c_H, q_alpha(2 * H - 1)) < 1e-14);
  }
}

TEST_CASE("fbm covariance") {
  HurstParams hp = derive_hurst_params(0.75);
  CHECK(fbm_covariance(hp, 2.0, 2.0) == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-15));
  CHECK(fbm_covariance(hp, 1.7, 0.0) == 0.0);
  CHECK(fbm_covariance(hp, 2.0, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(fbm_covariance(hp, -1.0, 0.5), std::domain_error);

  SUBCASE("symmetry and positive semidefiniteness on random point sets") {
    std::mt19937 gen(1234);
    std::uniform_real_distribution<double> unif(0.01, 2.0);
    for (double H : {0.55, 0.7, 0.95}) {
      HurstParams h = derive_hurst_params(H);
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> ts(6);
        for (auto& t : ts) t = unif(gen);
        Eigen::MatrixXd m(6, 6);
        for (int i = 0; i < 6; ++i)
          for (int j = 0; j < 6; ++j) m(i, j) = fbm_covariance(h, ts[i], ts[j]);
        CHECK(m.isApprox(m.transpose(), 1e-14));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
        CHECK(es.eigenvalues().minCoeff() > -1e-10);
      }
    }
  }
}

namespace {

// independent composition: int_0^{t^s} K_H(t,u) K_H(s,u) du, which must
// reproduce the fBm covariance
double reproduction_integral(const HurstParams& hp, double t, double s) {
  double lo = std::min(t, s);
  auto f = [&](double u) {
    if (u <= 0 || u >= lo) return 0.0;
    return kernel_K_H(hp, t, u).value * kernel_K_H(hp, s, u).value;
  };
  return graded_integral(f, lo);
}

}  // namespace

TEST_CASE("volterra kernel K_H") {
  SUBCASE("vanishing interval: K_H -> 0 like (t-s)^{H-1/2}") {
    HurstParams hp = derive_hurst_params(0.75);
    double v1 = kernel_K_H(hp, 0.5 + 1e-6, 0.5).value;
    double v2 = kernel_K_H(hp, 0.5 + 1e-10, 0.5).value;
    CHECK(v1 < 0.05);
    CHECK(v2 == doctest::Approx(v1 * 0.1).epsilon(0.02));  // (1e-4)^{H-1/2}
  }
  SUBCASE("domain errors") {
    HurstParams hp = derive_hurst_params(0.75);
    CHECK_THROWS_AS(kernel_K_H(hp, 0.5, 0.5), std::domain_error);
    CHECK_THROWS_AS(kernel_K_H(hp, 0.5, 0.7), std::domain_error);
    CHECK_THROWS_AS(kernel_K_H(hp, 0.5, 0.0), std::domain_error);
  }
  SUBCASE("regression fixture, two independent rules") {
    // 1.0643079928014275 from a 40-digit evaluation of the substituted form
    HurstParams hp = derive_hurst_params(0.6);
    auto g = kernel_K_H(hp, 1.0, 0.25, KernelQuadMethod::substituted_gauss);
    auto a = kernel_K_H(hp, 1.0, 0.25, KernelQuadMethod::adaptive_simpson);
    CHECK(rel_err(g.value, 1.0643079928014275) < 1e-10);
    CHECK(rel_err(a.value, g.value) < 1e-8);
    HurstParams hp75 = derive_hurst_params(0.75);
    CHECK(rel_err(kernel_K_H(hp75, 1.0, 0.5).value, 0.93759196369805723) < 1e-10);
  }
  SUBCASE("kernel reproduces the fBm covariance") {
    HurstParams hp = derive_hurst_params(0.75);
    double got = reproduction_integral(hp, 1.0, 0.5);
    double want = fbm_covariance(hp, 1.0, 0.5);
    CHECK(std::abs(got - want) <= 1e-6 * want);
  }
}

TEST_CASE("fractional integral on sampled data") {
  SUBCASE("constant function has the exact power form") {
    for (double alpha : {0.25, 0.5, 0.75}) {
      SampledFunction one = SampledFunction::constant(1.0, 0.0, 1.0, 5);
      for (double t : {0.0, 0.3, 0.9}) {
        double want = std::pow(1.0 - t, alpha) / std::tgamma(alpha + 1.0);
        CHECK(rel_err(fractional_integral_right(one, alpha, t), want) < 1e-13);
      }
    }
  }
  SUBCASE("zero function") {
    SampledFunction zero = SampledFunction::constant(0.0, 0.0, 1.0, 4);
    CHECK(fractional_integral_right(zero, 0.5, 0.25) == 0.0);
  }
  SUBCASE("linear function, alpha = 0.25, closed form") {
    // 0.55663776514740051 = [ (1/2)^{5/4}/(5/4) + (1/2)(1/2)^{1/4}/(1/4) ] / Gamma(1/4)
    SampledFunction lin = SampledFunction::identity(0.0, 1.0, 9);
    CHECK(rel_err(fractional_integral_right(lin, 0.25, 0.5), 0.55663776514740051) < 1e-13);
  }
  SUBCASE("alpha domain") {
    SampledFunction one = SampledFunction::constant(1.0, 0.0, 1.0);
    CHECK_THROWS_AS(fractional_integral_right(one, 0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(fractional_integral_right(one, 1.0, 0.5), std::domain_error);
  }
  SUBCASE("t at or beyond the right end gives zero") {
    SampledFunction one = SampledFunction::constant(1.0, 0.0, 1.0);
    CHECK(fractional_integral_right(one, 0.5, 1.0) == 0.0);
  }
}

TEST_CASE("transfer operator") {
  HurstParams hp = derive_hurst_params(0.7);

  SUBCASE("zero input, zero output") {
    SampledFunction zero = SampledFunction::constant(0.0, 0.0, 1.0, 4);
    for (double s : {0.1, 0.5, 0.9}) CHECK(transfer_operator(zero, hp, s) == 0.0);
  }
  SUBCASE("indicator support: vanishes past t") {
    SampledFunction ind = SampledFunction::constant(1.0, 0.0, 0.6, 2);
    CHECK(transfer_operator(ind, hp, 0.7) == 0.0);
    CHECK(transfer_operator(ind, hp, 0.6) == 0.0);
  }
  SUBCASE("domain errors") {
    SampledFunction ind = SampledFunction::constant(1.0, 0.0, 0.6, 2);
    CHECK_THROWS_AS(transfer_operator(ind, hp, 0.0), std::domain_error);
    CHECK_THROWS_AS(transfer_operator(ind, hp, -0.2), std::domain_error);
  }
  SUBCASE("transfer of an indicator equals the Volterra kernel") {
    SampledFunction ind = SampledFunction::constant(1.0, 0.0, 0.6, 2);
    for (double s : {0.1, 0.3, 0.55}) {
      double got = transfer_operator(ind, hp, s);
      double want = kernel_K_H(hp, 0.6, s).value;
      CHECK(rel_err(got, want) < 1e-6);
    }
  }
  SUBCASE("isometry on indicators: squared L2 norm equals t^{2H}") {
    const double t = 0.6;
    SampledFunction ind = SampledFunction::constant(1.0, 0.0, t, 2);
    auto f = [&](double s) {
      if (s <= 0 || s >= t) return 0.0;
      double v = transfer_operator(ind, hp, s);
      return v * v;
    };
    double got = graded_integral(f, t, 16, 120);
    double want = std::pow(t, 2.0 * hp.H);
    CHECK(std::abs(got - want) <= 1e-5 * want);
  }
}

TEST_CASE("restricted fourier transform") {
  SampledFunction ind = SampledFunction::constant(1.0, 0.0, 1.0, 2);

  SUBCASE("tau = 0 gives the plain integral") {
    CHECK(rel_err(restricted_fourier(ind, 0.0, 1.0, 0.0).real(), 1.0) < 1e-14);
    CHECK(std::abs(restricted_fourier(ind, 0.0, 1.0, 0.0).imag()) < 1e-14);
  }
  SUBCASE("indicator transform (1 - e^{-i tau}) / (i tau)") {
    for (double tau : {0.3, 2.0, 37.5, 1500.0}) {
      std::complex<double> want =
          (1.0 - std::exp(std::complex<double>(0.0, -tau))) / std::complex<double>(0.0, tau);
      std::complex<double> got = restricted_fourier(ind, 0.0, 1.0, tau);
      CHECK(std::abs(got - want) < 1e-12);
    }
  }
  SUBCASE("small tau matches the series branch smoothly") {
    for (double tau : {1e-8, 1e-5, 9e-5}) {
      // cancellation-free reference: 1 - e^{-i tau} = 2 sin^2(tau/2) + i sin(tau)
      std::complex<double> num(2.0 * std::sin(0.5 * tau) * std::sin(0.5 * tau),
                               std::sin(tau));
      std::complex<double> want = num / std::complex<double>(0.0, tau);
      CHECK(std::abs(restricted_fourier(ind, 0.0, 1.0, tau) - want) < 1e-12);
    }
  }
  SUBCASE("conjugate symmetry for real data") {
    std::mt19937 gen(99);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> grid{0.0, 0.2, 0.5, 0.6, 1.0}, vals(5);
    for (auto& v : vals) v = unif(gen);
    SampledFunction f(grid, vals);
    for (double tau : {0.7, 5.0, 42.0}) {
      auto plus = restricted_fourier(f, 0.0, 1.0, tau);
      auto minus = restricted_fourier(f, 0.0, 1.0, -tau);
      CHECK(std::abs(minus - std::conj(plus)) < 1e-13);
    }
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(restricted_fourier(ind, 1.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(restricted_fourier(ind, 0.0, 2.0, 1.0), std::domain_error);
  }
}

TEST_CASE("bounded-domain spectral pairing") {
  SampledFunction ind = SampledFunction::constant(1.0, 0.0, 1.0, 2);

  SUBCASE("exact double integral at alpha = 1/2") {
    PairingResult pr = lemma_A1_pairing(ind, ind, 0.0, 1.0, 0.5, 1e-5);
    CHECK(std::abs(pr.lhs - 8.0 / 3.0) <= 1e-6 * (8.0 / 3.0));
  }
  SUBCASE("lhs equals rhs across alpha") {
    for (double alpha : {0.3, 0.5, 0.8}) {
      PairingResult pr = lemma_A1_pairing(ind, ind, 0.0, 1.0, alpha, 1e-5);
      CHECK(pr.converged);
      CHECK(rel_err(pr.rhs, pr.lhs) < 1e-4);
    }
  }
  SUBCASE("q_alpha inverts the d=1 riesz constant") {
    for (double alpha : {0.3, 0.5, 0.8}) {
      KernelSpec r = make_kernel(KernelFamily::riesz, alpha, 1);
      CHECK(std::abs(q_alpha(alpha) * r.constant - 1.0) < 1e-12);
    }
  }
  SUBCASE("alpha domain") {
    CHECK_THROWS_AS(lemma_A1_pairing(ind, ind, 0.0, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(lemma_A1_pairing(ind, ind, 0.0, 1.0, 1.0), std::domain_error);
  }
}

TEST_CASE("sampled function validation") {
  CHECK_THROWS_AS(SampledFunction({0.0, 0.0, 1.0}, {1.0, 1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SampledFunction({0.0, 1.0}, {1.0, 1.0, 1.0}), std::invalid_argument);
  SampledFunction f({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
  CHECK(f(0.5) == doctest::Approx(0.5));
  CHECK(f(1.5) == doctest::Approx(0.5));
  CHECK(f(2.5) == 0.0);
}
