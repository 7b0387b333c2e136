#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "mfwr/errors.hpp"
#include "mfwr/finite_volume.hpp"
#include "mfwr/landscape.hpp"
#include "mfwr/phase_diagram.hpp"
#include "mfwr/special_functions.hpp"
#include "mfwr/verify.hpp"
#include "parallel.hpp"

namespace mfwr::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// least-squares slope of ln err vs ln V over the usable points
double loglog_slope(const std::vector<double>& v, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(err[i] > 0.0) || !std::isfinite(err[i])) continue;
    const double x = std::log(v[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  const double denom = m * sxx - sx * sx;
  if (m < 2 || denom == 0.0) return kNaN;
  return (m * sxy - sx * sy) / denom;
}

}  // namespace

std::vector<Table> cmd_phase_diagram(double a, const Grid& g0, const Grid& g1, int jobs) {
  Table grid{"grid", {"mu0", "mu1", "region", "fixed_points", "in_spinodal", "y_star"}, {}};
  const std::int64_t n = g0.n * g1.n;
  std::vector<Row> rows(static_cast<std::size_t>(n));
  parallel_for(n, jobs, [&](std::int64_t idx) {
    const double mu0 = grid_value(g0, idx / g1.n);
    const double mu1 = grid_value(g1, idx % g1.n);
    const ModelParams p{a, mu0, mu1};
    const phase::PhaseClass cls = phase::classify(p);
    const landscape::LandscapeSolution sol = landscape::solve(p);
    rows[static_cast<std::size_t>(idx)] = {
        mu0,
        mu1,
        phase::region_code(cls.region),
        static_cast<std::int64_t>(sol.fixed_points.size()),
        static_cast<std::int64_t>(cls.in_spinodal),
        sol.maximizers.back()};
  });
  grid.rows = std::move(rows);

  // boundary of the three-solution region: mu0 = m + eta, mu1 = m - eta with
  // m = xi - ln a, sampled over the grid's reach in xi; the mirror branch
  // swaps the two potentials
  Table spin{"spinodal", {"xi", "eta", "mu0", "mu1", "branch"}, {}};
  const double xi_max = 0.5 * (g0.hi + g1.hi) + std::log(a);
  if (xi_max >= 1.0) {
    const Grid gx{1.0, xi_max, xi_max > 1.0 ? 257 : 1};
    for (int branch : {+1, -1}) {
      for (std::int64_t k = 0; k < gx.n; ++k) {
        const double xi = grid_value(gx, k);
        const double eta = phase::spinodal_eta(xi);
        const double m = xi - std::log(a);
        spin.rows.push_back({xi, eta, m + branch * eta, m - branch * eta,
                             static_cast<std::int64_t>(branch)});
      }
    }
  }
  return {std::move(grid), std::move(spin)};
}

std::vector<Table> cmd_landscape(double a, const Grid& g0, const Grid& g1, int jobs) {
  Table t{"landscape",
          {"mu0", "mu1", "n_fixed", "fp0", "fp1", "fp2", "n_max", "y_star_lo", "y_star_hi",
           "value", "curvature", "degenerate"},
          {}};
  const std::int64_t n = g0.n * g1.n;
  std::vector<Row> rows(static_cast<std::size_t>(n));
  parallel_for(n, jobs, [&](std::int64_t idx) {
    const double mu0 = grid_value(g0, idx / g1.n);
    const double mu1 = grid_value(g1, idx % g1.n);
    const ModelParams p{a, mu0, mu1};
    const landscape::LandscapeSolution sol = landscape::solve(p);
    double fp[3] = {kNaN, kNaN, kNaN};
    for (std::size_t k = 0; k < sol.fixed_points.size() && k < 3; ++k)
      fp[k] = sol.fixed_points[k];
    rows[static_cast<std::size_t>(idx)] = {
        mu0,
        mu1,
        static_cast<std::int64_t>(sol.fixed_points.size()),
        fp[0],
        fp[1],
        fp[2],
        static_cast<std::int64_t>(sol.maximizers.size()),
        sol.maximizers.front(),
        sol.maximizers.back(),
        sol.value,
        landscape::free_energy_d2(p, sol.maximizers.back()),
        static_cast<std::int64_t>(sol.degenerate)};
  });
  t.rows = std::move(rows);
  return {std::move(t)};
}

std::vector<Table> cmd_eos_two(double a, const Grid& g0, const Grid& g1, int jobs) {
  Table t{"eos", {"mu0", "mu1", "branch", "z0", "z1", "rho0", "rho1", "pressure", "note"}, {}};
  const std::int64_t n = g0.n * g1.n;
  std::vector<std::vector<Row>> chunks(static_cast<std::size_t>(n));
  parallel_for(n, jobs, [&](std::int64_t idx) {
    const double mu0 = grid_value(g0, idx / g1.n);
    const double mu1 = grid_value(g1, idx % g1.n);
    auto& out = chunks[static_cast<std::size_t>(idx)];
    try {
      const auto pts = phase::equation_of_state({a, mu0, mu1});
      for (std::size_t b = 0; b < pts.size(); ++b)
        out.push_back({mu0, mu1, static_cast<std::int64_t>(b), pts[b].z0, pts[b].z1,
                       pts[b].rho0, pts[b].rho1, pts[b].pressure, std::string()});
    } catch (const CriticalPointError&) {
      out.push_back({mu0, mu1, std::int64_t{0}, kNaN, kNaN, kNaN, kNaN, kNaN,
                     std::string("critical")});
    }
  });
  for (auto& c : chunks)
    for (auto& r : c) t.rows.push_back(std::move(r));
  return {std::move(t)};
}

std::vector<Table> cmd_eos_one(double a, double theta, const Grid& gmu, int jobs) {
  Table iso{"isotherm", {"mu", "side", "rho", "pressure", "note"}, {}};
  std::vector<std::vector<Row>> chunks(static_cast<std::size_t>(gmu.n));
  parallel_for(gmu.n, jobs, [&](std::int64_t i) {
    const double mu = grid_value(gmu, i);
    const phase::OneComponentParams p{a, theta, mu};
    auto& out = chunks[static_cast<std::size_t>(i)];
    try {
      const double rho = phase::one_component_density(p);
      out.push_back({mu, std::string(), rho, phase::one_component_pressure(p), std::string()});
    } catch (const AmbiguityError&) {
      // on the coexistence line: both branches, one shared pressure
      const double pr = phase::one_component_pressure(p);
      out.push_back(
          {mu, std::string("left"), phase::one_component_density(p, phase::Side::Left), pr,
           std::string("jump")});
      out.push_back(
          {mu, std::string("right"), phase::one_component_density(p, phase::Side::Right), pr,
           std::string("jump")});
    } catch (const CriticalPointError&) {
      out.push_back({mu, std::string(), kNaN, kNaN, std::string("critical")});
    }
  });
  for (auto& c : chunks)
    for (auto& r : c) iso.rows.push_back(std::move(r));

  Table jump{"jump", {"a", "theta", "mu_star", "z_minus", "z_plus", "delta_rho", "plateau"}, {}};
  try {
    const phase::CoexistenceData cd = phase::coexistence_data(a, theta);
    jump.rows.push_back(
        {a, theta, std::log(theta), cd.z_minus, cd.z_plus, cd.ybar / a, cd.plateau});
  } catch (const DomainError&) {
    // subcritical or critical isotherm: no jump to report
  }
  return {std::move(iso), std::move(jump)};
}

std::vector<Table> cmd_maxwell(const Grid& ga, const Grid& gt, int jobs) {
  Table sum{"summary",
            {"a", "theta", "applicable", "ybar", "z_minus", "z_plus", "plateau", "residual"},
            {}};
  Table curve{"curve", {"a", "theta", "rho", "pressure", "plateau"}, {}};
  const std::int64_t n = ga.n * gt.n;
  std::vector<Row> srows(static_cast<std::size_t>(n));
  std::vector<std::vector<Row>> crows(static_cast<std::size_t>(n));
  parallel_for(n, jobs, [&](std::int64_t idx) {
    const double a = grid_value(ga, idx / gt.n);
    const double theta = grid_value(gt, idx % gt.n);
    try {
      const phase::CoexistenceData cd = phase::coexistence_data(a, theta);
      const double res = phase::maxwell_residual(a, theta);
      srows[static_cast<std::size_t>(idx)] = {a,          theta,      std::int64_t{1}, cd.ybar,
                                              cd.z_minus, cd.z_plus,  cd.plateau,      res};
      const Grid gr{0.5 * cd.z_minus, 1.5 * cd.z_plus, 201};
      auto& out = crows[static_cast<std::size_t>(idx)];
      for (std::int64_t k = 0; k < gr.n; ++k) {
        const double rho = grid_value(gr, k);
        out.push_back({a, theta, rho, phase::pressure_curve(a, theta, rho), cd.plateau});
      }
    } catch (const DomainError&) {
      // no coexistence region for this (a, theta)
      srows[static_cast<std::size_t>(idx)] = {a,    theta, std::int64_t{0}, kNaN,
                                              kNaN, kNaN,  kNaN,            kNaN};
    }
  });
  sum.rows = std::move(srows);
  for (auto& c : crows)
    for (auto& r : c) curve.rows.push_back(std::move(r));
  return {std::move(sum), std::move(curve)};
}

std::vector<Table> cmd_finite_volume(double a, double mu0, double mu1,
                                     const std::vector<double>& volumes, int jobs) {
  Table vols{"volumes",
             {"V", "f_v", "pressure", "f_err", "u_err", "u_bound", "y_v", "y_err", "curvature"},
             {}};
  const ModelParams p{a, mu0, mu1};
  const landscape::LandscapeSolution sol = landscape::solve(p);
  const double y_inf = sol.maximizers.back();
  const double u0 = mean_density(a, mu0);
  const double u1 = mean_density(a, mu1);

  const auto n = static_cast<std::int64_t>(volumes.size());
  std::vector<Row> rows(static_cast<std::size_t>(n));
  std::vector<double> ferr(volumes.size()), uerr(volumes.size()), yerr(volumes.size());
  parallel_for(n, jobs, [&](std::int64_t i) {
    const double V = volumes[static_cast<std::size_t>(i)];
    const double fv = fv::log_partition_series(p, V) / V;
    const double ue = std::max(std::fabs(fv::mean_density_v(a, mu0, V) - u0),
                               std::fabs(fv::mean_density_v(a, mu1, V) - u1));
    const fv::VMaximizer vm = fv::free_energy_v_maximizer(p, V);
    const double fe = std::fabs(fv - sol.value);
    const double ye = std::fabs(vm.y - y_inf);
    ferr[static_cast<std::size_t>(i)] = fe;
    uerr[static_cast<std::size_t>(i)] = ue;
    yerr[static_cast<std::size_t>(i)] = ye;
    rows[static_cast<std::size_t>(i)] = {V,  fv, sol.value,    fe, ue, 0.5 / V,
                                         vm.y, ye, vm.curvature};
  });
  vols.rows = std::move(rows);

  Table fits{"fits", {"quantity", "slope"}, {}};
  fits.rows.push_back({std::string("f_err"), loglog_slope(volumes, ferr)});
  fits.rows.push_back({std::string("u_err"), loglog_slope(volumes, uerr)});
  fits.rows.push_back({std::string("y_err"), loglog_slope(volumes, yerr)});
  return {std::move(vols), std::move(fits)};
}

VerifyOutcome cmd_verify(const std::map<std::string, double>& tolerance_overrides) {
  const auto results = verify::run_acceptance(tolerance_overrides);
  for (const auto& [key, val] : tolerance_overrides) {
    bool known = false;
    for (const auto& r : results) known = known || r.key == key;
    if (!known) std::fprintf(stderr, "warning: --tol key '%s' matches no criterion\n", key.c_str());
  }
  Table crit{"criteria", {"id", "key", "description", "tolerance", "observed", "pass"}, {}};
  std::int64_t passed = 0;
  for (const auto& r : results) {
    std::fprintf(stderr, "[%s] %2d %-18s observed %.3e  tolerance %.3e  (%.2fs)  %s\n",
                 r.pass ? "PASS" : "FAIL", r.id, r.key.c_str(), r.observed, r.tolerance,
                 r.seconds, r.description.c_str());
    crit.rows.push_back({static_cast<std::int64_t>(r.id), r.key, r.description, r.tolerance,
                         r.observed, static_cast<std::int64_t>(r.pass)});
    passed += r.pass;
  }
  const auto total = static_cast<std::int64_t>(results.size());
  std::fprintf(stderr, "%s: %lld of %lld criteria\n",
               passed == total ? "ALL PASS" : "FAILURES PRESENT",
               static_cast<long long>(passed), static_cast<long long>(total));
  Table summary{"summary", {"all_pass", "passed", "failed", "criteria"}, {}};
  summary.rows.push_back(
      {static_cast<std::int64_t>(passed == total), passed, total - passed, total});
  VerifyOutcome out;
  out.tables = {std::move(crit), std::move(summary)};
  out.all_pass = passed == total;
  return out;
}

}  // namespace mfwr::cli
