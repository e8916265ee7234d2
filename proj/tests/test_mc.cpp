#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "fracheat/mc.hpp"
#include "helpers.hpp"

using namespace fracheat;
using testutil::rel_err;

TEST_CASE("chi-square negative moments") {
  SUBCASE("closed values") {
    CHECK(chi2_neg_moment(3, 0.0) == 1.0);
    CHECK(rel_err(chi2_neg_moment(3, 0.5), 2.0 / std::sqrt(2.0 * M_PI)) < 1e-14);
    CHECK(rel_err(chi2_neg_moment(3, 1.0), 1.0) < 1e-14);  // E W_3^{-1} = 1
    CHECK(std::isfinite(chi2_neg_moment(2, 0.99)));
  }
  SUBCASE("boundary p = d/2 is a domain error") {
    CHECK_THROWS_AS(chi2_neg_moment(2, 1.0), std::domain_error);
    CHECK_THROWS_AS(chi2_neg_moment(3, 1.6), std::domain_error);
  }
  SUBCASE("MC agreement") {
    struct Case { int d; double p; };
    for (auto c : {Case{2, 0.5}, Case{3, 0.5}, Case{3, 1.0}, Case{4, 1.5}}) {
      RandomStream stream(RngSpec{515151, static_cast<std::uint32_t>(c.d)});
      Welford w;
      for (int i = 0; i < 400000; ++i) w.add(std::pow(stream.chi2(c.d), -c.p));
      MCEstimate e = w.estimate();
      CHECK(std::abs(e.mean - chi2_neg_moment(c.d, c.p)) <= 3.0 * e.std_error);
    }
  }
}

TEST_CASE("chi-square mgf") {
  CHECK(chi2_mgf(3, 0.0) == 1.0);
  CHECK(rel_err(chi2_mgf(2, 1.0), 1.0 / 3.0) < 1e-15);
  CHECK(rel_err(chi2_mgf(4, 1.5), 1.0 / 16.0) < 1e-15);
  CHECK_THROWS_AS(chi2_mgf(2, -0.5), std::domain_error);

  for (double c : {0.1, 0.5, 1.0}) {
    RandomStream stream(RngSpec{616161, static_cast<std::uint32_t>(c * 10)});
    Welford w;
    for (int i = 0; i < 300000; ++i) w.add(std::exp(-c * stream.chi2(2)));
    MCEstimate e = w.estimate();
    CHECK(std::abs(e.mean - chi2_mgf(2, c)) <= 3.0 * e.std_error);
  }
}

TEST_CASE("shifted chi-square moment") {
  // independent check: E[(W_2+1)^{-3/2}] = 0.34432045758120153 (40-digit oracle)
  CHECK(rel_err(chi2_shifted_neg_moment(2, 1.5), 0.34432045758120153) < 1e-9);
  RandomStream stream(RngSpec{717171, 0});
  Welford w;
  for (int i = 0; i < 300000; ++i) w.add(std::pow(stream.chi2(2) + 1.0, -1.5));
  MCEstimate e = w.estimate();
  CHECK(std::abs(e.mean - chi2_shifted_neg_moment(2, 1.5)) <= 3.0 * e.std_error);
}

TEST_CASE("noncentral chi-square sampling") {
  SUBCASE("central case mean is d") {
    std::vector<double> mu{0.0, 0.0, 0.0};
    auto s = sample_noncentral(3, mu, RngSpec{11, 0}, 200000);
    Welford w;
    for (double x : s.direct) w.add(x);
    MCEstimate e = w.estimate();
    CHECK(std::abs(e.mean - 3.0) <= 3.0 * e.std_error);
  }
  SUBCASE("mean is d + |mu|^2") {
    std::vector<double> mu{1.0, -0.5, 2.0};
    auto s = sample_noncentral(3, mu, RngSpec{12, 0}, 200000);
    Welford w;
    for (double x : s.direct) w.add(x);
    MCEstimate e = w.estimate();
    CHECK(std::abs(e.mean - (3.0 + 5.25)) <= 3.0 * e.std_error);
  }
  SUBCASE("two samplers agree in distribution (KS at the 1% level)") {
    std::vector<double> mu{1.0, 0.0, 0.0};
    auto s = sample_noncentral(3, mu, RngSpec{13, 0}, 100000);
    double d = ks_distance(s.direct, s.decomposed);
    double crit = 1.628 * std::sqrt(2.0 / 100000.0);
    CHECK(d < crit);
  }
  SUBCASE("domain errors") {
    std::vector<double> mu{0.0};
    CHECK_THROWS_AS(sample_noncentral(1, mu, RngSpec{1, 0}, 0), std::domain_error);
    CHECK_THROWS_AS(sample_noncentral(2, mu, RngSpec{1, 0}, 10), std::invalid_argument);
  }
}

TEST_CASE("mc_I_f") {
  KernelSpec r2 = make_kernel(KernelFamily::riesz, 1.0, 2);

  SUBCASE("reproducibility is bitwise") {
    auto a = mc_I_f(r2, 1.0, 0.25, 0.5, RngSpec{42, 0}, 50000);
    auto b = mc_I_f(r2, 1.0, 0.25, 0.5, RngSpec{42, 0}, 50000);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    auto c = mc_I_f(r2, 1.0, 0.25, 0.5, RngSpec{43, 0}, 50000);
    CHECK(a.mean != c.mean);
  }
  SUBCASE("agrees with the closed form") {
    auto est = mc_I_f(r2, 1.0, 0.25, 0.5, RngSpec{42, 0}, 500000);
    auto cf = closed_form_I_f(r2, 1.0, 0.25, 0.5);
    CHECK(std::abs(est.mean - *cf.exact) <= 4.0 * est.std_error);
    CHECK(!est.variance_reliable);  // d - alpha = 1 >= d/2
  }
  SUBCASE("heat estimate lies within the family bounds") {
    KernelSpec h = make_kernel(KernelFamily::heat, 2.0, 2);  // alpha^{d/2} > 1/2: bounds hold
    double t = 30.0, r = 0.0, s = 0.0;
    auto est = mc_I_f(h, t, r, s, RngSpec{4242, 0}, 400000);
    auto b = closed_form_I_f(h, t, r, s);
    double se3 = 3.0 * est.std_error;
    CHECK(est.mean >= b.lower - se3);
    CHECK(est.mean <= b.upper + se3);
    CHECK(est.variance_reliable);
  }
  SUBCASE("power-law scaling: doubling q multiplies by 2^{-(d-alpha)/2}") {
    auto e1 = mc_I_f(r2, 1.0, 0.5, 0.5, RngSpec{77, 0}, 400000);   // q = 1
    auto e2 = mc_I_f(r2, 1.5, 0.5, 0.5, RngSpec{77, 10}, 400000);  // q = 2
    double ratio = e2.mean / e1.mean;
    double want = std::pow(2.0, -0.5);
    double se = ratio * (e1.std_error / e1.mean + e2.std_error / e2.mean);
    CHECK(std::abs(ratio - want) <= 4.0 * se);
  }
  SUBCASE("standard error scales like n^{-1/2}") {
    KernelSpec heat = make_kernel(KernelFamily::heat, 1.0, 2);
    auto e1 = mc_I_f(heat, 1.0, 0.25, 0.5, RngSpec{5, 0}, 100000);
    auto e4 = mc_I_f(heat, 1.0, 0.25, 0.5, RngSpec{5, 0}, 400000);
    double ratio = e4.std_error / e1.std_error;
    CHECK(ratio > 0.4);
    CHECK(ratio < 0.6);
  }
  SUBCASE("nonnegative integrand gives nonnegative estimates") {
    auto est = mc_I_f(r2, 1.0, 0.9, 0.9, RngSpec{1, 0}, 10000);
    CHECK(est.mean >= 0.0);
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(mc_I_f(r2, 1.0, 0.25, 0.5, RngSpec{1, 0}, 0), std::domain_error);
    CHECK_THROWS_AS(mc_I_f(r2, 1.0, 1.25, 0.5, RngSpec{1, 0}, 10), std::domain_error);
    KernelSpec w = make_kernel(KernelFamily::white_noise, 0, 2);
    CHECK_THROWS_AS(mc_I_f(w, 1.0, 0.25, 0.5, RngSpec{1, 0}, 10), std::domain_error);
  }
}

TEST_CASE("mc_J_f") {
  KernelSpec r2 = make_kernel(KernelFamily::riesz, 1.0, 2);

  SUBCASE("y = z agrees with mc_I_f at matching variance") {
    std::vector<double> y{0.3, -0.2};
    // J with u+v = 1 has U ~ N(0, 2 I); I with q = 1 identical
    auto ej = mc_J_f(r2, 0.5, 0.5, y, y, RngSpec{88, 0}, 400000);
    auto ei = mc_I_f(r2, 1.0, 0.5, 0.5, RngSpec{88, 100}, 400000);
    double se = std::hypot(ej.std_error, ei.std_error);
    CHECK(std::abs(ej.mean - ei.mean) <= 4.0 * se);
  }
  SUBCASE("riesz bound with the D_{alpha,d} constant") {
    // E|y-z+U|^{-(d-a)} <= gamma 2^{-(d-a)/2} E W_{d-1}^{-(d-a)/2} (u+v)^{-(d-a)/2},
    // finite only when (d-a)/2 < (d-1)/2, hence d=3, alpha=2 here
    KernelSpec r3 = make_kernel(KernelFamily::riesz, 2.0, 3);
    std::vector<double> y{0.5, 0.0, 0.1}, z{0.0, 0.5, -0.1};
    double uv = 1.3;
    auto est = mc_J_f(r3, 0.65, 0.65, y, z, RngSpec{99, 0}, 400000);
    double bound = r3.constant * std::pow(2.0, -0.5) * chi2_neg_moment(2, 0.5) *
                   std::pow(uv, -0.5);
    CHECK(est.mean <= bound + 3.0 * est.std_error);
  }
  SUBCASE("heat bound via the joint mgf inequality") {
    KernelSpec h = make_kernel(KernelFamily::heat, 0.5, 2);
    std::vector<double> y{0.4, 0.0}, z{0.0, 0.0};
    double uv = 0.9;
    auto est = mc_J_f(h, 0.45, 0.45, y, z, RngSpec{101, 0}, 300000);
    double bound = h.constant * std::pow(0.5, 1.0) * std::pow(uv, -1.0);
    CHECK(est.mean <= bound + 3.0 * est.std_error);
  }
}

TEST_CASE("welford merge equals one-pass") {
  RandomStream s(RngSpec{3, 0});
  std::vector<double> xs(1000);
  for (auto& x : xs) x = s.normal();
  Welford whole;
  for (double x : xs) whole.add(x);
  Welford a, b;
  for (int i = 0; i < 400; ++i) a.add(xs[i]);
  for (int i = 400; i < 1000; ++i) b.add(xs[i]);
  a.merge(b);
  CHECK(rel_err(a.mean(), whole.mean()) < 1e-13);
  CHECK(rel_err(a.variance(), whole.variance()) < 1e-12);
}
