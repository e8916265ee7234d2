// Command-line front end: existence checks, kernel and norm evaluation,
// solution covariance, exact Gaussian simulation, and the verification suite.
//
// Exit codes: 0 success, 1 usage error, 2 numerical non-convergence,
//             3 existence-threshold violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "fracheat/errors.hpp"
#include "fracheat/field.hpp"
#include "fracheat/fractional.hpp"
#include "fracheat/norms.hpp"
#include "fracheat/verify.hpp"

using json = nlohmann::ordered_json;
using namespace fracheat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitThreshold = 3;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// all-or-nothing file output: write to a temp sibling, then rename
void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
    out << content;
    if (!out.good()) throw std::runtime_error("failed writing: " + tmp.string());
  }
  fs::rename(tmp, target);
}

struct OutputOptions {
  std::string format = "json";
  std::string path;  // empty = stdout
};

void emit(const OutputOptions& out, const json& doc, const std::string& csv) {
  std::string payload = out.format == "csv" ? csv : doc.dump(2) + "\n";
  if (out.path.empty())
    std::cout << payload;
  else
    atomic_write(out.path, payload);
}

struct KernelOptions {
  std::string family = "white";
  double alpha = 1.0;
  int dim = 1;

  KernelSpec make() const { return make_kernel(family_from_name(family), alpha, dim); }
  void attach(CLI::App* cmd, bool required_kernel = true) {
    auto* k = cmd->add_option("--kernel", family, "kernel family: white|riesz|bessel|heat|poisson");
    if (required_kernel) k->required();
    cmd->add_option("--alpha", alpha, "kernel parameter");
    cmd->add_option("--dim", dim, "spatial dimension d")->check(CLI::PositiveNumber);
  }
};

json kernel_json(const KernelSpec& s) {
  return json{{"family", family_name(s.family)},
              {"alpha", s.alpha},
              {"dim", s.d},
              {"constant", s.constant},
              {"alpha_f", s.alpha_f}};
}

json quad_json(const QuadratureSpec& q) {
  return json{{"panels_per_axis", q.panels_per_axis},
              {"singularity_split", q.singularity_split},
              {"rel_tolerance", q.rel_tolerance},
              {"max_refinements", q.max_refinements}};
}

json norm_result_json(const NormResult& r) {
  return json{{"value", r.value},
              {"error_estimate", r.error_estimate},
              {"converged", r.converged},
              {"refinements_used", r.refinements_used}};
}

json hurst_json(const HurstParams& hp) {
  return json{{"H", hp.H},
              {"alpha_H", hp.alpha_H},
              {"c_H", hp.c_H},
              {"c_star_H", hp.c_star_H}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional-colored noise toolkit for the stochastic heat equation"};
  app.set_config("--config", "", "flat key = value configuration file with [section] headers");
  app.allow_config_extras(false);
  app.require_subcommand(1);

  OutputOptions out;
  app.add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--output", out.path, "output path (atomic write); stdout when omitted");
  int threads = 0;
  app.add_option("--threads", threads, "worker cap for covariance assembly")
      ->envname("FRACHEAT_THREADS");

  // ---- existence ----
  auto* cmd_exist = app.add_subcommand("existence", "existence threshold for (kernel, H)");
  KernelOptions ek;
  ek.attach(cmd_exist);
  double e_hurst = 0.75;
  cmd_exist->add_option("--hurst", e_hurst, "Hurst index in (1/2,1)")->required();

  // ---- kernel ----
  auto* cmd_kernel = app.add_subcommand("kernel", "evaluate a spatial covariance kernel");
  KernelOptions kk;
  kk.attach(cmd_kernel);
  double k_radius = 1.0;
  std::optional<double> k_xi;
  cmd_kernel->add_option("--radius", k_radius, "evaluation radius |x|")->required();
  cmd_kernel->add_option("--spectral-xi", k_xi, "also report the spectral density at |xi|");

  // ---- norm ----
  auto* cmd_norm = app.add_subcommand("norm", "squared norm of the solution kernel g_tx");
  KernelOptions nk;
  nk.attach(cmd_norm);
  double n_hurst = 0.75, n_t = 1.0, n_tol = 1e-9;
  int n_refine = 8;
  cmd_norm->add_option("--hurst", n_hurst)->required();
  cmd_norm->add_option("--t", n_t, "time horizon")->check(CLI::PositiveNumber);
  cmd_norm->add_option("--tol", n_tol, "relative quadrature tolerance");
  cmd_norm->add_option("--max-refinements", n_refine);

  // ---- covariance ----
  auto* cmd_cov = app.add_subcommand("covariance", "solution covariance of two points");
  KernelOptions ck;
  ck.attach(cmd_cov);
  double c_hurst = 0.75, c_t1 = 1.0, c_t2 = 1.0, c_tol = 1e-8;
  std::vector<double> c_x1, c_x2;
  cmd_cov->add_option("--hurst", c_hurst)->required();
  cmd_cov->add_option("--t1", c_t1)->required();
  cmd_cov->add_option("--t2", c_t2)->required();
  cmd_cov->add_option("--x1", c_x1, "first site coordinates")->expected(-1);
  cmd_cov->add_option("--x2", c_x2, "second site coordinates")->expected(-1);
  cmd_cov->add_option("--tol", c_tol);

  // ---- simulate ----
  auto* cmd_sim = app.add_subcommand("simulate", "exact Gaussian simulation on a grid");
  KernelOptions sk;
  sk.attach(cmd_sim);
  double s_hurst = 0.75, s_T = 1.0, s_spacing = 0.25, s_tol = 1e-8;
  int s_times = 4, s_sites = 5;
  std::int64_t s_draws = 100;
  std::uint64_t s_seed = 0;
  cmd_sim->add_option("--hurst", s_hurst)->required();
  cmd_sim->add_option("--T", s_T, "final time")->check(CLI::PositiveNumber);
  cmd_sim->add_option("--grid-times", s_times, "number of equi-spaced times in (0,T]")
      ->check(CLI::PositiveNumber);
  cmd_sim->add_option("--grid-sites", s_sites, "number of sites along the first axis")
      ->check(CLI::PositiveNumber);
  cmd_sim->add_option("--site-spacing", s_spacing)->check(CLI::PositiveNumber);
  cmd_sim->add_option("--draws", s_draws)->check(CLI::PositiveNumber);
  cmd_sim->add_option("--seed", s_seed);
  cmd_sim->add_option("--tol", s_tol);
  int s_cap = 64;
  cmd_sim->add_option("--max-grid-points", s_cap, "safety cap on grid size");

  // ---- verify ----
  auto* cmd_verify = app.add_subcommand("verify", "run the property verification suite");
  bool v_thorough = false;
  cmd_verify->add_flag("--thorough", v_thorough, "larger Monte Carlo sample sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*cmd_exist) {
      KernelSpec spec = ek.make();
      ExistenceResult r = existence_check(spec, e_hurst);
      json doc{{"command", "existence"},
               {"inputs", {{"kernel", kernel_json(spec)}, {"hurst", e_hurst}}},
               {"results",
                {{"admissible", r.admissible},
                 {"threshold", r.threshold},
                 {"threshold_raw", r.threshold_raw}}}};
      std::string csv = "admissible,threshold,threshold_raw\n";
      csv += std::string(r.admissible ? "true" : "false") + "," + fmt17(r.threshold) + "," +
             fmt17(r.threshold_raw) + "\n";
      emit(out, doc, csv);
      return kExitOk;
    }

    if (*cmd_kernel) {
      KernelSpec spec = kk.make();
      double value = kernel_eval_radial(spec, k_radius);
      json results{{"value", value}};
      std::string csv = "radius,value";
      std::string csv_row = fmt17(k_radius) + "," + fmt17(value);
      if (k_xi) {
        std::vector<double> xi(spec.d, 0.0);
        xi[0] = *k_xi;
        SpectralValue sv = spectral_density(spec, xi);
        results["spectral_density"] = sv.value;
        results["spectral_density_consistent"] = sv.printed_consistent_with_kernel;
        csv += ",spectral_density";
        csv_row += "," + fmt17(sv.value);
      }
      json doc{{"command", "kernel"},
               {"inputs", {{"kernel", kernel_json(spec)}, {"radius", k_radius}}},
               {"results", results}};
      emit(out, doc, csv + "\n" + csv_row + "\n");
      return kExitOk;
    }

    if (*cmd_norm) {
      KernelSpec spec = nk.make();
      HurstParams hp = derive_hurst_params(n_hurst);
      QuadratureSpec quad;
      quad.rel_tolerance = n_tol;
      quad.max_refinements = n_refine;
      ColoredNorm n = norm_g_colored(spec, hp, n_t, quad);
      json doc{{"command", "norm"},
               {"inputs",
                {{"kernel", kernel_json(spec)},
                 {"hurst", hurst_json(hp)},
                 {"t", n_t},
                 {"quadrature", quad_json(quad)}}},
               {"results",
                {{"exact", n.exact},
                 {"lower", norm_result_json(n.lower)},
                 {"upper", norm_result_json(n.upper)}}}};
      std::string csv = "exact,lower,upper,error_estimate,converged\n";
      csv += std::string(n.exact ? "true" : "false") + "," + fmt17(n.lower.value) + "," +
             fmt17(n.upper.value) + "," + fmt17(n.lower.error_estimate) + "," +
             (n.lower.converged && n.upper.converged ? "true" : "false") + "\n";
      emit(out, doc, csv);
      return (n.lower.converged && n.upper.converged) ? kExitOk : kExitNotConverged;
    }

    if (*cmd_cov) {
      KernelSpec spec = ck.make();
      HurstParams hp = derive_hurst_params(c_hurst);
      if (c_x1.empty()) c_x1.assign(spec.d, 0.0);
      if (c_x2.empty()) c_x2.assign(spec.d, 0.0);
      if (static_cast<int>(c_x1.size()) != spec.d || static_cast<int>(c_x2.size()) != spec.d)
        throw CLI::ValidationError("covariance", "--x1/--x2 must have --dim coordinates");
      QuadratureSpec quad;
      quad.rel_tolerance = c_tol;
      SpaceTimePoint p1{c_t1, c_x1}, p2{c_t2, c_x2};
      NormResult r = covariance_solution(spec, hp, p1, p2, quad);
      json doc{{"command", "covariance"},
               {"inputs",
                {{"kernel", kernel_json(spec)},
                 {"hurst", hurst_json(hp)},
                 {"p1", {{"t", c_t1}, {"x", c_x1}}},
                 {"p2", {{"t", c_t2}, {"x", c_x2}}},
                 {"quadrature", quad_json(quad)}}},
               {"results", norm_result_json(r)}};
      std::string csv = "value,error_estimate,converged\n" + fmt17(r.value) + "," +
                        fmt17(r.error_estimate) + "," + (r.converged ? "true" : "false") +
                        "\n";
      emit(out, doc, csv);
      return r.converged ? kExitOk : kExitNotConverged;
    }

    if (*cmd_sim) {
      KernelSpec spec = sk.make();
      HurstParams hp = derive_hurst_params(s_hurst);
      if (static_cast<std::int64_t>(s_times) * s_sites > s_cap)
        throw CLI::ValidationError(
            "simulate", "grid has more than --max-grid-points points (quadratic assembly)");
      SpaceTimeGrid grid;
      grid.d = spec.d;
      for (int i = 1; i <= s_times; ++i) grid.times.push_back(s_T * i / s_times);
      for (int j = 0; j < s_sites; ++j) {
        std::vector<double> site(spec.d, 0.0);
        site[0] = s_spacing * j;
        grid.sites.push_back(site);
      }
      QuadratureSpec quad;
      quad.rel_tolerance = s_tol;
      CovarianceMatrix cov = assemble_covariance(grid, spec, hp, quad, threads);
      if (!cov.all_converged) {
        std::cerr << "covariance assembly did not converge to tolerance\n";
        return kExitNotConverged;
      }
      auto factor = factor_with_jitter(cov, default_jitter_schedule(cov));
      auto draws = sample_field(factor, s_draws, RngSpec{s_seed, 0});

      // CSV: one row per draw, one column per grid point
      std::string csv = "draw";
      for (std::size_t k = 0; k < grid.size(); ++k) {
        SpaceTimePoint p = grid.point(k);
        csv += ",t" + fmt17(p.t) + "_x" + fmt17(p.x[0]);
      }
      csv += "\n";
      for (std::int64_t i = 0; i < s_draws; ++i) {
        csv += std::to_string(i);
        for (Eigen::Index k = 0; k < draws[i].values.size(); ++k)
          csv += "," + fmt17(draws[i].values(k));
        csv += "\n";
      }

      json jcov = json::array();
      for (Eigen::Index i = 0; i < cov.entries.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < cov.entries.cols(); ++j) row.push_back(cov.entries(i, j));
        jcov.push_back(row);
      }
      json jsamples = json::array();
      for (const auto& d : draws) {
        json row = json::array();
        for (Eigen::Index k = 0; k < d.values.size(); ++k) row.push_back(d.values(k));
        jsamples.push_back(row);
      }
      json doc{{"command", "simulate"},
               {"inputs",
                {{"kernel", kernel_json(spec)},
                 {"hurst", hurst_json(hp)},
                 {"T", s_T},
                 {"grid_times", s_times},
                 {"grid_sites", s_sites},
                 {"site_spacing", s_spacing},
                 {"draws", s_draws},
                 {"seed", s_seed},
                 {"quadrature", quad_json(quad)}}},
               {"results",
                {{"grid", {{"times", grid.times}, {"sites", grid.sites}}},
                 {"covariance", jcov},
                 {"jitter_applied", factor.jitter_applied},
                 {"max_entry_error", cov.max_entry_error},
                 {"samples", jsamples}}}};
      emit(out, doc, csv);
      return kExitOk;
    }

    if (*cmd_verify) {
      auto results = run_verification(v_thorough);
      bool all = true;
      json checks = json::array();
      for (const auto& r : results) {
        all = all && r.passed;
        std::printf("%s %s (%s)\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        checks.push_back(json{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      }
      if (!out.path.empty())
        atomic_write(out.path, json{{"command", "verify"}, {"results", checks}}.dump(2) + "\n");
      std::printf("%s\n", all ? "ALL CHECKS PASSED" : "CHECKS FAILED");
      return all ? kExitOk : kExitNotConverged;
    }
  } catch (const threshold_error& e) {
    std::cerr << "threshold violation: " << e.what() << "\n";
    return kExitThreshold;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const not_psd_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNotConverged;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotConverged;
  }
  return kExitOk;
}
