#include "fracheat/verify.hpp"

#include <cmath>
#include <sstream>

#include "fracheat/errors.hpp"
#include "fracheat/field.hpp"
#include "fracheat/fractional.hpp"
#include "fracheat/heat.hpp"
#include "fracheat/mc.hpp"
#include "fracheat/norms.hpp"
#include "fracheat/special.hpp"

namespace fracheat {

namespace {

struct Suite {
  std::vector<CheckResult> results;

  void check(const std::string& name, bool ok, double got, double want) {
    std::ostringstream os;
    os << "got " << got << ", reference " << want;
    results.push_back({name, ok, os.str()});
  }
  void check_rel(const std::string& name, double got, double want, double tol) {
    bool ok = std::abs(got - want) <= tol * std::max(std::abs(want), 1e-300);
    check(name, ok, got, want);
  }
  void check_true(const std::string& name, bool ok, const std::string& detail = "") {
    results.push_back({name, ok, detail});
  }
};

}  // namespace

std::vector<CheckResult> run_verification(bool thorough) {
  Suite s;
  const std::int64_t n_mc = thorough ? 1000000 : 200000;

  // constants
  for (double a : {0.3, 0.5, 0.8}) {
    KernelSpec r1 = make_kernel(KernelFamily::riesz, a, 1);
    s.check_rel("q_alpha * gamma_{alpha,1} = 1 (alpha=" + std::to_string(a) + ")",
                q_alpha(a) * r1.constant, 1.0, 1e-12);
  }

  // fBm covariance positive semidefinite on a fixed point set
  {
    HurstParams hp = derive_hurst_params(0.75);
    std::vector<double> ts{0.13, 0.35, 0.52, 0.77, 0.9, 1.0};
    Eigen::MatrixXd m(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) m(i, j) = fbm_covariance(hp, ts[i], ts[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    s.check_true("fbm covariance PSD on 6-point set", es.eigenvalues().minCoeff() > -1e-10);
  }

  // kernel reproduction of the fBm covariance
  {
    HurstParams hp = derive_hurst_params(0.75);
    double t = 1.0, u = 0.5;
    auto f = [&](double x) {
      return kernel_K_H(hp, t, x).value * kernel_K_H(hp, u, x).value;
    };
    double got = adaptive_simpson(f, 1e-10, u, 1e-9);
    s.check_rel("int K_H(t,.)K_H(s,.) = R_H(t,s), H=0.75", got,
                fbm_covariance(hp, t, u), 1e-5);
  }

  // transfer operator isometry on an indicator
  {
    HurstParams hp = derive_hurst_params(0.7);
    SampledFunction ind = SampledFunction::constant(1.0, 0.0, 0.6, 2);
    auto k2 = [&](double x) {
      double v = transfer_operator(ind, hp, x);
      return v * v;
    };
    double got = adaptive_simpson(k2, 1e-9, 0.6, 1e-8);
    s.check_rel("||K* 1_[0,t]||^2 = t^{2H}", got, std::pow(0.6, 2 * hp.H), 1e-4);
  }

  // bounded-domain spectral identity
  {
    SampledFunction ind = SampledFunction::constant(1.0, 0.0, 1.0, 2);
    PairingResult pr = lemma_A1_pairing(ind, ind, 0.0, 1.0, 0.5, 1e-5);
    s.check_rel("pairing lhs = 8/3 (alpha=0.5)", pr.lhs, 8.0 / 3.0, 1e-8);
    s.check_rel("pairing lhs = rhs (alpha=0.5)", pr.rhs, pr.lhs, 1e-4);
  }

  // heat kernel mass and semigroup
  {
    std::vector<double> x0{0.0};
    double mass = adaptive_simpson([&](double y) { return green_eval_radial(0.5, y, 1); },
                                   -40.0, 40.0, 1e-10);
    s.check_rel("int G(t,x) dx = 1 (d=1)", mass, 1.0, 1e-8);
    double conv = adaptive_simpson(
        [&](double y) { return green_eval_radial(0.3, 1.0 - y, 1) * green_eval_radial(0.7, y, 1); },
        -40.0, 40.0, 1e-10);
    s.check_rel("semigroup G(0.3)*G(0.7) = G(1.0) at z=1", conv, green_eval_radial(1.0, 1.0, 1),
                1e-7);
  }

  // chi-square identities against Monte Carlo
  {
    RngSpec rng{20240817, 0};
    RandomStream stream(rng);
    Welford w;
    for (std::int64_t i = 0; i < n_mc; ++i) w.add(std::exp(-stream.chi2(2)));
    MCEstimate e = w.estimate();
    double want = chi2_mgf(2, 1.0);
    s.check_true("chi2 mgf d=2 c=1 within 3 SE of MC",
                 std::abs(e.mean - want) <= 3.0 * e.std_error);
  }
  {
    RngSpec rng{20240817, 7};
    RandomStream stream(rng);
    Welford w;
    for (std::int64_t i = 0; i < n_mc; ++i) w.add(std::pow(stream.chi2(3), -0.5));
    MCEstimate e = w.estimate();
    double want = chi2_neg_moment(3, 0.5);
    s.check_true("chi2 negative moment d=3 p=0.5 within 3 SE of MC",
                 std::abs(e.mean - want) <= 3.0 * e.std_error);
  }

  // existence thresholds
  {
    KernelSpec white3 = make_kernel(KernelFamily::white_noise, 0, 3);
    s.check_rel("white d=3 threshold", existence_check(white3, 0.8).threshold_raw, 0.75, 0);
    KernelSpec riesz = make_kernel(KernelFamily::riesz, 1.0, 4);
    s.check_rel("riesz d=4 alpha=1 threshold", existence_check(riesz, 0.9).threshold_raw,
                0.75, 0);
    KernelSpec poisson = make_kernel(KernelFamily::poisson, 1.0, 2);
    s.check_rel("poisson d=2 threshold", existence_check(poisson, 0.8).threshold_raw, 0.75, 0);
    bool threw = false;
    try {
      HurstParams hp = derive_hurst_params(0.7);
      QuadratureSpec q;
      norm_g_white(hp, 3, 1.0, q);
    } catch (const threshold_error&) {
      threw = true;
    }
    s.check_true("norm_g_white rejects H=0.7, d=3", threw);
  }

  // weighted double integral reproduces t^{2H} for F = 1
  {
    HurstParams hp = derive_hurst_params(0.8);
    QuadratureSpec q;
    q.rel_tolerance = 1e-9;
    NormResult r = weighted_double_integral([](double, double) { return 1.0; }, hp, 0.7, q);
    s.check_rel("alpha_H int int |u-v|^{2H-2} = t^{2H}", r.value, std::pow(0.7, 2 * hp.H),
                1e-8);
  }

  // norm scaling law for the riesz family
  {
    HurstParams hp = derive_hurst_params(0.8);
    KernelSpec spec = make_kernel(KernelFamily::riesz, 1.0, 2);
    QuadratureSpec q;
    q.rel_tolerance = 1e-8;
    double v1 = norm_g_colored(spec, hp, 0.5, q).lower.value;
    double v2 = norm_g_colored(spec, hp, 1.0, q).lower.value;
    s.check_rel("riesz norm scaling value(2t)/value(t)", v2 / v1,
                std::pow(2.0, 2 * hp.H - 0.5), 1e-5);
  }

  // small white-noise covariance matrix is PSD and samples reproduce
  {
    HurstParams hp = derive_hurst_params(0.75);
    KernelSpec spec = make_kernel(KernelFamily::white_noise, 0, 1);
    SpaceTimeGrid grid{{0.5, 1.0}, {{0.0}, {1.0}}, 1};
    QuadratureSpec q;
    q.rel_tolerance = 1e-7;
    CovarianceMatrix cov = assemble_covariance(grid, spec, hp, q);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov.entries);
    s.check_true("white-noise 2x2x... covariance PSD",
                 es.eigenvalues().minCoeff() > -1e-10 * cov.entries.diagonal().mean());
    auto factor = factor_with_jitter(cov, default_jitter_schedule(cov));
    auto draws1 = sample_field(factor, 3, RngSpec{11, 0});
    auto draws2 = sample_field(factor, 3, RngSpec{11, 0});
    bool same = true;
    for (int i = 0; i < 3; ++i) same = same && draws1[i].values == draws2[i].values;
    s.check_true("field sampling reproducible for fixed seed", same);
  }

  return s.results;
}

}  // namespace fracheat
