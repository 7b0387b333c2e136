#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "grids.hpp"
#include "mfwr/errors.hpp"
#include "table.hpp"

#ifndef MFWR_VERSION
#define MFWR_VERSION "0.0.0"
#endif

namespace cli = mfwr::cli;

namespace {

struct Common {
  std::string output = "-";
  std::string format = "csv";
  int jobs = 1;
  bool no_meta = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--output", c.output, "Output path, '-' for stdout")->capture_default_str();
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--jobs", c.jobs, "Worker threads for grid evaluation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_flag("--no-meta", c.no_meta, "Drop the meta block from JSON output");
  sub->fallthrough();  // lets --config after the subcommand reach the main app
}

std::string canon(const cli::Grid& g) {
  return cli::fmt17(g.lo) + ":" + cli::fmt17(g.hi) + ":" + std::to_string(g.n);
}

using Config = std::vector<std::pair<std::string, std::string>>;

void emit(const Common& c, const std::string& command, Config config,
          const std::vector<cli::Table>& tables) {
  if (c.format == "csv") {
    cli::emit_csv(c.output, tables);
    return;
  }
  config.emplace_back("jobs", std::to_string(c.jobs));
  const cli::Meta meta{command, MFWR_VERSION, cli::now_rfc3339(), std::move(config)};
  cli::emit_json(c.output, tables, c.no_meta ? nullptr : &meta);
}

std::map<std::string, double> parse_tol(const std::vector<std::string>& kvs) {
  std::map<std::string, double> out;
  for (const std::string& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--tol '" + kv + "': expected KEY=VALUE");
    std::size_t used = 0;
    double val = 0.0;
    try {
      val = std::stod(kv.substr(eq + 1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("--tol '" + kv + "': value is not a number");
    }
    if (used != kv.size() - eq - 1)
      throw std::invalid_argument("--tol '" + kv + "': value is not a number");
    out[kv.substr(0, eq)] = val;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "mean-field Widom-Rowlinson model: phase diagrams, equations of state, "
      "Maxwell constructions, and finite-volume partition-function studies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", MFWR_VERSION);
  app.set_config("--config", "",
                 "INI config file, one [section] per subcommand; "
                 "command-line flags take precedence");

  // phase-diagram and landscape sweep the same (a; mu0 x mu1) surface
  struct SweepOpts {
    Common common;
    double a = 1.0;
    double mu0 = 0.0, mu1 = 0.0;
    std::string g0s, g1s, gms;
  };
  auto add_sweep = [](CLI::App* sub, SweepOpts& o) {
    sub->add_option("--a", o.a, "Repulsion strength")->capture_default_str();
    sub->add_option("--mu0", o.mu0, "Species-0 potential (1-point grid)")->capture_default_str();
    sub->add_option("--mu1", o.mu1, "Species-1 potential (1-point grid)")->capture_default_str();
    sub->add_option("--mu0-grid", o.g0s, "Species-0 potential grid MIN:MAX:N");
    sub->add_option("--mu1-grid", o.g1s, "Species-1 potential grid MIN:MAX:N");
    sub->add_option("--mu-grid", o.gms, "Shorthand: apply one grid to both axes");
    add_common(sub, o.common);
  };
  auto sweep_grids = [](const CLI::App* sub, const SweepOpts& o) {
    const cli::Grid g0 = sub->count("--mu0-grid") ? cli::parse_grid(o.g0s)
                         : sub->count("--mu-grid") ? cli::parse_grid(o.gms)
                                                   : cli::singleton(o.mu0);
    const cli::Grid g1 = sub->count("--mu1-grid") ? cli::parse_grid(o.g1s)
                         : sub->count("--mu-grid") ? cli::parse_grid(o.gms)
                                                   : cli::singleton(o.mu1);
    return std::make_pair(g0, g1);
  };

  SweepOpts pd;
  CLI::App* pd_cmd = app.add_subcommand("phase-diagram",
                                        "Classify a potential grid and sample the spinodal curve");
  add_sweep(pd_cmd, pd);

  SweepOpts ls;
  CLI::App* ls_cmd =
      app.add_subcommand("landscape", "Fixed points and maximizers of the free-energy landscape");
  add_sweep(ls_cmd, ls);

  struct EosOpts {
    Common common;
    double a = 1.0, theta = 1.0;
    double mu0 = 0.0, mu1 = 0.0, mu = 0.0;
    std::string g0s, g1s, gms;
  };
  EosOpts eo;
  CLI::App* eos_cmd = app.add_subcommand(
      "eos", "Equation of state: two-component grid, or one-component isotherm via --mu/--mu-grid");
  eos_cmd->add_option("--a", eo.a, "Repulsion strength")->capture_default_str();
  eos_cmd->add_option("--theta", eo.theta, "Integrated-out activity (one-component mode)")
      ->capture_default_str();
  eos_cmd->add_option("--mu0", eo.mu0, "Species-0 potential (1-point grid)")->capture_default_str();
  eos_cmd->add_option("--mu1", eo.mu1, "Species-1 potential (1-point grid)")->capture_default_str();
  eos_cmd->add_option("--mu0-grid", eo.g0s, "Species-0 potential grid MIN:MAX:N");
  eos_cmd->add_option("--mu1-grid", eo.g1s, "Species-1 potential grid MIN:MAX:N");
  eos_cmd->add_option("--mu", eo.mu, "One-component potential (1-point grid)");
  eos_cmd->add_option("--mu-grid", eo.gms, "One-component potential grid MIN:MAX:N");
  add_common(eos_cmd, eo.common);

  struct MaxwellOpts {
    Common common;
    double a = 1.0, theta = 1.0;
    std::string gas, gts;
  };
  MaxwellOpts mx;
  CLI::App* mx_cmd =
      app.add_subcommand("maxwell", "Equal-area residual and pressure loop per (a, theta)");
  mx_cmd->add_option("--a", mx.a, "Repulsion strength (1-point grid)")->capture_default_str();
  mx_cmd->add_option("--theta", mx.theta, "Second-species activity (1-point grid)")
      ->capture_default_str();
  mx_cmd->add_option("--a-grid", mx.gas, "Repulsion grid MIN:MAX:N");
  mx_cmd->add_option("--theta-grid", mx.gts, "Activity grid MIN:MAX:N");
  add_common(mx_cmd, mx.common);

  struct FvOpts {
    Common common;
    double a = 1.0, mu0 = 0.0, mu1 = 0.0;
    std::vector<double> volumes;
  };
  FvOpts fo;
  CLI::App* fv_cmd =
      app.add_subcommand("finite-volume", "Convergence of finite-volume quantities over a V list");
  fv_cmd->add_option("--a", fo.a, "Repulsion strength")->capture_default_str();
  fv_cmd->add_option("--mu0", fo.mu0, "Species-0 potential")->capture_default_str();
  fv_cmd->add_option("--mu1", fo.mu1, "Species-1 potential")->capture_default_str();
  fv_cmd->add_option("--V-list", fo.volumes, "Volumes to evaluate")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  add_common(fv_cmd, fo.common);

  struct VerifyOpts {
    Common common;
    std::vector<std::string> tol;
  };
  VerifyOpts vo;
  CLI::App* vf_cmd = app.add_subcommand("verify", "Run the acceptance suite and emit a report");
  vf_cmd->add_option("--tol", vo.tol, "Tolerance override KEY=VALUE (repeatable)");
  add_common(vf_cmd, vo.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*pd_cmd) {
      const auto [g0, g1] = sweep_grids(pd_cmd, pd);
      emit(pd.common, "phase-diagram",
           {{"a", cli::fmt17(pd.a)}, {"mu0_grid", canon(g0)}, {"mu1_grid", canon(g1)}},
           cli::cmd_phase_diagram(pd.a, g0, g1, pd.common.jobs));
    } else if (*ls_cmd) {
      const auto [g0, g1] = sweep_grids(ls_cmd, ls);
      emit(ls.common, "landscape",
           {{"a", cli::fmt17(ls.a)}, {"mu0_grid", canon(g0)}, {"mu1_grid", canon(g1)}},
           cli::cmd_landscape(ls.a, g0, g1, ls.common.jobs));
    } else if (*eos_cmd) {
      const bool one = eos_cmd->count("--mu") || eos_cmd->count("--mu-grid");
      const bool two = eos_cmd->count("--mu0") || eos_cmd->count("--mu1") ||
                       eos_cmd->count("--mu0-grid") || eos_cmd->count("--mu1-grid");
      if (one && two) {
        std::fprintf(stderr,
                     "eos: give either --mu/--mu-grid (one-component) or "
                     "--mu0*/--mu1* (two-component), not both\n");
        return 1;
      }
      if (one) {
        const cli::Grid g =
            eos_cmd->count("--mu-grid") ? cli::parse_grid(eo.gms) : cli::singleton(eo.mu);
        emit(eo.common, "eos",
             {{"a", cli::fmt17(eo.a)}, {"theta", cli::fmt17(eo.theta)}, {"mu_grid", canon(g)}},
             cli::cmd_eos_one(eo.a, eo.theta, g, eo.common.jobs));
      } else {
        const cli::Grid g0 =
            eos_cmd->count("--mu0-grid") ? cli::parse_grid(eo.g0s) : cli::singleton(eo.mu0);
        const cli::Grid g1 =
            eos_cmd->count("--mu1-grid") ? cli::parse_grid(eo.g1s) : cli::singleton(eo.mu1);
        emit(eo.common, "eos",
             {{"a", cli::fmt17(eo.a)}, {"mu0_grid", canon(g0)}, {"mu1_grid", canon(g1)}},
             cli::cmd_eos_two(eo.a, g0, g1, eo.common.jobs));
      }
    } else if (*mx_cmd) {
      const cli::Grid ga =
          mx_cmd->count("--a-grid") ? cli::parse_grid(mx.gas) : cli::singleton(mx.a);
      const cli::Grid gt =
          mx_cmd->count("--theta-grid") ? cli::parse_grid(mx.gts) : cli::singleton(mx.theta);
      emit(mx.common, "maxwell", {{"a_grid", canon(ga)}, {"theta_grid", canon(gt)}},
           cli::cmd_maxwell(ga, gt, mx.common.jobs));
    } else if (*fv_cmd) {
      Config cfg{{"a", cli::fmt17(fo.a)},
                 {"mu0", cli::fmt17(fo.mu0)},
                 {"mu1", cli::fmt17(fo.mu1)}};
      std::string vlist;
      for (std::size_t i = 0; i < fo.volumes.size(); ++i)
        vlist += (i ? "," : "") + cli::fmt17(fo.volumes[i]);
      cfg.emplace_back("V_list", vlist);
      emit(fo.common, "finite-volume", std::move(cfg),
           cli::cmd_finite_volume(fo.a, fo.mu0, fo.mu1, fo.volumes, fo.common.jobs));
    } else if (*vf_cmd) {
      const auto overrides = parse_tol(vo.tol);
      Config cfg;
      for (const auto& [k, v] : overrides) cfg.emplace_back("tol." + k, cli::fmt17(v));
      const cli::VerifyOutcome out = cli::cmd_verify(overrides);
      emit(vo.common, "verify", std::move(cfg), out.tables);
      return out.all_pass ? 0 : 3;
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const mfwr::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const mfwr::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failure: %s\n", e.what());
    return 2;
  }
  return 0;
}
